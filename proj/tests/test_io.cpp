#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rdsize/error.hpp"
#include "rdsize/io.hpp"

using namespace rdsize;

TEST_SUITE("io") {
  TEST_CASE("observed data survives a JSON round trip") {
    auto sim = oracle::small_study(3, 200, 0.04, 40, 3, 2);
    const Json doc = observed_to_json(sim.obs);
    CHECK(doc.at("schema_version") == kSchemaVersion);
    const ObservedData back = observed_from_json(Json::parse(doc.dump()));
    REQUIRE(back.size() == sim.obs.size());
    for (int i = 0; i < back.size(); ++i) {
      CHECK(back.id(i) == sim.obs.id(i));
      CHECK(back.recruiter(i) == sim.obs.recruiter(i));
      CHECK(back.degree(i) == sim.obs.degree(i));
      CHECK(back.time(i) == sim.obs.time(i));
      CHECK(back.hold_end(i) == sim.obs.hold_end(i));
    }
    CHECK_THROWS_AS(observed_from_json(Json::parse(R"({"n": 2, "ids": ["a"]})")), DataError);
  }

  TEST_CASE("observed data survives a CSV round trip") {
    auto sim = oracle::small_study(4, 200, 0.04, 30, 2, 3);
    std::stringstream buf;
    write_rds_csv(buf, sim.obs);
    const auto rows = read_rds_csv(buf);
    const ObservedData back = ingest_rds_table(rows);
    CHECK(observed_to_json(back) == observed_to_json(sim.obs));
  }

  TEST_CASE("truth and priors carry the schema version") {
    auto sim = oracle::small_study(5, 100, 0.05, 10, 1, 3);
    const Json t = truth_to_json(sim, 77, 2);
    CHECK(t.at("schema_version") == kSchemaVersion);
    CHECK(t.at("susceptible").get<std::vector<std::int64_t>>() == sim.truth.susceptible);
    CHECK(t.at("seed").get<std::uint64_t>() == 77);
    Priors pr;
    pr.alpha = 3.0;
    CHECK(priors_to_json(pr).at("alpha") == 3.0);
  }

  TEST_CASE("chain CSV round trip") {
    std::stringstream buf;
    write_chain_header(buf);
    const std::vector<ChainRecord> rows{{10, 1234, 50, 300, -1234.5678901234567}, {11, 1300, 49, 301, -1.0 / 3.0}};
    for (const auto& r : rows) write_chain_row(buf, r);
    const auto back = read_chain_csv(buf);
    REQUIRE(back.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(back[k].iteration == rows[k].iteration);
      CHECK(back[k].N == rows[k].N);
      CHECK(back[k].edges == rows[k].edges);
      CHECK(back[k].du_total == rows[k].du_total);
      CHECK(back[k].log_summand == rows[k].log_summand);
    }
    std::stringstream empty;
    CHECK_THROWS_AS(read_chain_csv(empty), DataError);
    std::stringstream bad("iteration,N,E_S,D_u,log_summand\n1;2;3\n");
    CHECK_THROWS_AS(read_chain_csv(bad), DataError);
    std::stringstream no_header("1,2,3,4,5\n");
    CHECK_THROWS_AS(read_chain_csv(no_header), DataError);
  }

  TEST_CASE("posterior summary") {
    SUBCASE("constant chain") {
      const std::vector<std::int64_t> d(50, 700);
      const auto s = summarize_draws(d);
      CHECK(s.mean == 700.0);
      CHECK(s.sd == 0.0);
      CHECK(s.mode == 700);
      CHECK(s.q025 == 700.0);
      CHECK(s.q975 == 700.0);
    }
    SUBCASE("small sample") {
      const std::vector<std::int64_t> d{1, 2, 2, 3, 4, 4, 10};
      const std::vector<double> refs{100.0};
      const auto s = summarize_draws(d, refs);
      CHECK(s.mean == doctest::Approx(26.0 / 7.0));
      CHECK(s.mode == 2);  // ties go to the smallest value
      CHECK(s.median == 3.0);
      CHECK(s.q025 == doctest::Approx(1.15));  // type 7: 1 + 0.15 * (2 - 1)
      REQUIRE(s.prevalence.size() == 1);
      CHECK(s.prevalence[0].mean_percent == doctest::Approx(100.0 * 26.0 / 7.0 / 100.0));
      const Json j = summary_to_json(s);
      CHECK(j.at("draws") == 7);
      CHECK(j.at("prevalence").size() == 1);
    }
    SUBCASE("errors") {
      CHECK_THROWS_AS(summarize_draws(std::vector<std::int64_t>{}), DataError);
      const std::vector<double> bad{0.0};
      CHECK_THROWS_AS(summarize_draws(std::vector<std::int64_t>{5}, bad), ConfigError);
    }
  }

  TEST_CASE("JSON files") {
    const auto path = std::filesystem::temp_directory_path() / "rdsize_io_test.json";
    Json doc{{"schema_version", kSchemaVersion}, {"x", 1.5}};
    write_json_file(path.string(), doc);
    CHECK(read_json_file(path.string()) == doc);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_json_file(path.string()), DataError);
  }
}
