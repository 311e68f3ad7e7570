#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "groupdyn/io.hpp"

using namespace groupdyn;

TEST_CASE("observations csv round trip") {
  std::istringstream in("n,count\n2,30\n3,45\n10,2\n");
  const auto obs = read_observations_csv(in);
  CHECK(obs.total_groups == 77);
  CHECK(obs.counts.at(2) == 30);
  CHECK(obs.counts.at(3) == 45);
  CHECK(obs.counts.at(10) == 2);
}

TEST_CASE("observations csv tolerates blank lines and CRLF") {
  std::istringstream in("n,count\r\n2,5\r\n\r\n4,1\r\n");
  const auto obs = read_observations_csv(in);
  CHECK(obs.total_groups == 6);
}

TEST_CASE("observations csv names the first bad line") {
  const auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_observations_csv(in);
    } catch (const CsvError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("weird,header\n2,3\n") == 1);
  CHECK(line_of("n,count\n2,3\nabc,4\n") == 3);
  CHECK(line_of("n,count\n2,3\n4\n") == 3);
  CHECK(line_of("n,count\n1,3\n") == 2);
  CHECK(line_of("n,count\n3,-2\n") == 2);
  CHECK(line_of("n,count\n2,3.5\n") == 2);
  CHECK(line_of("n,count\n") == 1);    // header only: nothing observed
  CHECK(line_of("n,count\n5,0\n") == 2);
}

TEST_CASE("histogram csv format") {
  Histogram h;
  h.add(3, 1.5);
  h.add(2, 0.25);
  std::ostringstream out;
  write_histogram_csv(out, h);
  CHECK(out.str() == "n,weight\n2,0.25\n3,1.5\n");
}

TEST_CASE("event log csv format") {
  EventLog log;
  log.push_back({0, Transition::join, 2, 3, 0.5});
  log.push_back({1, Transition::leave, 3, 2, 1.25});
  std::ostringstream out;
  write_event_log_csv(out, log);
  CHECK(out.str() ==
        "ordinal,transition,size_before,size_after,dt\n"
        "0,join,2,3,0.5\n"
        "1,leave,3,2,1.25\n");
}

TEST_CASE("promise graph serializes to canonical json") {
  const auto g = cooperation_triangle("A1", "A2", "Seed", "X", "Y");
  const auto j = to_json(g);
  CHECK(j["agents"] == nlohmann::json({"A1", "A2", "Seed"}));
  REQUIRE(j["promises"].size() == 6);
  for (const auto& p : j["promises"]) {
    CHECK(p.contains("from"));
    CHECK(p.contains("to"));
    CHECK(p["body"].size() == 2);
    for (const auto& atom : p["body"]) {
      CHECK((atom["polarity"] == "+" || atom["polarity"] == "-"));
      CHECK(atom.contains("topic"));
    }
  }
  // serialization is deterministic
  CHECK(to_json(g).dump() == j.dump());

  // the conditional offer atom carries its condition
  bool saw_conditional = false;
  for (const auto& p : j["promises"]) {
    for (const auto& atom : p["body"]) {
      if (atom.contains("condition")) {
        saw_conditional = true;
        CHECK(atom["polarity"] == "+");
      }
    }
  }
  CHECK(saw_conditional);
}

TEST_CASE("set-valued topics serialize as arrays") {
  PromiseGraph g;
  g.add_agent("A");
  g.add_agent("B");
  g.add_promise({"A", "B", {PromiseBody{Polarity::offer, {"X", "Y"}}}});
  const auto j = to_json(g);
  CHECK(j["promises"][0]["body"][0]["topic"] ==
        nlohmann::json({"X", "Y"}));
}

TEST_CASE("fit report json carries the documented keys") {
  Observations obs;
  for (int n = 2; n <= 30; ++n) {
    obs.add(n, static_cast<std::uint64_t>(100 / n + 1));
  }
  FitConfig config;
  config.n_t_lo = 4.0;
  config.n_t_hi = 200.0;
  config.grid_points = 8;
  const auto result = fit(obs, config);
  const auto j = to_json(result, config);
  for (const char* key :
       {"beta_hat", "n_t_hat", "ratio_hat", "log_likelihood", "chi_square",
        "dof", "implied_mode", "ladder", "second_best", "config"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["ladder"].size() == 4);
  CHECK(j["ladder"][0].contains("scale"));
  CHECK(j["ladder"][0].contains("mode"));
  CHECK(j["config"]["grid_points"] == 8);
}
