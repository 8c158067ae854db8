// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "heavytail/csv.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/serde.hpp"

using namespace heavytail;
using Catch::Approx;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("heavytail_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("csv writer emits header plus rows with LF endings", "[csv]") {
  CsvWriter csv({"a", "b"});
  csv.add_row({"1", "2"});
  csv.add_row({csv_num(0.5), csv_num(1e18)});
  REQUIRE(csv.to_string() == "a,b\n1,2\n0.5,1e+18\n");
  REQUIRE_THROWS_AS(csv.add_row({"only-one"}), validation_error);
}

TEST_CASE("ingest of a bare numeric column", "[csv]") {
  TempDir dir;
  const auto path = dir.file("plain.csv");
  write_text(path, "1\n2\n3\n");
  REQUIRE(ingest_csv(path) == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("ingest resolves a named header column and skips blanks", "[csv]") {
  TempDir dir;
  const auto path = dir.file("wealth.csv");
  std::string text = "wealth\n";
  for (int i = 1; i <= 100; ++i) text += std::to_string(i) + "\n";
  text += "\n";  // trailing blank line is skipped
  write_text(path, text);
  const auto values = ingest_csv(path, "wealth");
  REQUIRE(values.size() == 100);
  REQUIRE(values.front() == 1.0);
  REQUIRE(values.back() == 100.0);
  REQUIRE_THROWS_AS(ingest_csv(path, "income"), validation_error);
}

TEST_CASE("ingest picks the right column in a multi-column file", "[csv]") {
  TempDir dir;
  const auto path = dir.file("two.csv");
  write_text(path, "t,S\n1,0.5\n2,0.25\n");
  REQUIRE(ingest_csv(path, "S") == std::vector<double>{0.5, 0.25});
  REQUIRE(ingest_csv(path, "t") == std::vector<double>{1.0, 2.0});
}

TEST_CASE("stray separators are parse errors with a line number", "[csv]") {
  TempDir dir;
  const auto path = dir.file("bad.csv");
  write_text(path, "1\n1,5\n3\n");
  try {
    ingest_csv(path);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }

  const auto alpha = dir.file("alpha.csv");
  write_text(alpha, "1\nabc\n");
  try {
    ingest_csv(alpha);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("survival curve csv round trip", "[csv]") {
  TempDir dir;
  const auto path = dir.file("curve.csv");
  write_text(path, "t,S\n1,0.9\n2,0.5\n4,0.1\n");
  auto [t, s] = ingest_survival_csv(path);
  REQUIRE(t == std::vector<double>{1.0, 2.0, 4.0});
  REQUIRE(s == std::vector<double>{0.9, 0.5, 0.1});

  const auto headerless = dir.file("curve2.csv");
  write_text(headerless, "1,0.9\n2,0.5\n");
  auto [t2, s2] = ingest_survival_csv(headerless);
  REQUIRE(t2.size() == 2);
}

TEST_CASE("full-precision samples survive a write/ingest round trip", "[csv]") {
  TempDir dir;
  const auto path = dir.file("roundtrip.csv");
  SampleBatch batch = sample(Laplace{1.0}, 500, 314159);
  CsvWriter csv({"value"});
  for (double v : batch.values) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    csv.add_row({buf});
  }
  csv.write_file(path);
  const auto restored = ingest_csv(path);
  REQUIRE(restored == batch.values);  // bit-exact through text
}

TEST_CASE("distribution strings parse and round trip", "[serde]") {
  const auto pareto = parse_distribution("pareto(2)");
  REQUIRE(std::get<ParetoI>(pareto).alpha == 2.0);
  REQUIRE(std::get<Uniform>(parse_distribution(" uniform( -1 , 1 ) ")).lo == -1.0);
  REQUIRE(std::get<StrictlyStable>(parse_distribution("stable(1.5)")).alpha == 1.5);

  const auto mix = parse_distribution("ptd(laplace(1),0.5,0.01)");
  const auto& ptd = std::get<PutTailDownMix>(mix);
  REQUIRE(ptd.p == 0.5);
  REQUIRE(ptd.half_width == 0.01);
  REQUIRE(std::get<Laplace>(ptd.base->spec).rate == 1.0);

  const auto emp = parse_distribution("empirical(1,-1)");
  REQUIRE(std::get<Empirical>(emp).values == std::vector<double>{-1.0, 1.0});

  for (const char* text :
       {"pareto(2)", "uniform(-1,1)", "ptd(laplace(1),0.5,0.01)", "empirical(-1,1)",
        "stable(1.5)", "degenerate(3)", "sympareto(3)", "normal(2)", "exponential(0.5)"}) {
    const auto spec = parse_distribution(text);
    const auto restored = parse_distribution(distribution_to_string(spec));
    REQUIRE(distribution_to_string(restored) == distribution_to_string(spec));
  }
}

TEST_CASE("distribution string errors", "[serde]") {
  REQUIRE_THROWS_AS(parse_distribution("pareto"), validation_error);
  REQUIRE_THROWS_AS(parse_distribution("pareto()"), validation_error);
  REQUIRE_THROWS_AS(parse_distribution("pareto(a)"), validation_error);
  REQUIRE_THROWS_AS(parse_distribution("pareto(1,2)"), validation_error);
  REQUIRE_THROWS_AS(parse_distribution("frechet(1)"), validation_error);
  REQUIRE_THROWS_AS(parse_distribution("pareto(-1)"), validation_error);  // validated too
  REQUIRE_THROWS_AS(parse_distribution("ptd(exponential(1),0.5)"), validation_error);
}
