#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdchan/cli.hpp"

using namespace qdchan;
using namespace qdchan::cli;

namespace {

namespace fs = std::filesystem;

RunConfig parse(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"qdchan"};
  argv.insert(argv.end(), args.begin(), args.end());
  return parse_command_line(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qdchan_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

std::string error_of(std::initializer_list<const char*> args) {
  try {
    parse(args).validate();
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a curve invocation") {
  const auto c = parse({"curve", "--model", "qcd", "--d", "3", "--eta", "0.4", "--nu", "1", "--workers", "2"});
  CHECK(c.command == Command::Curve);
  CHECK(c.model == Model::QCD);
  CHECK(c.dims == std::vector<int>{3});
  CHECK(c.etas == std::vector<double>{0.4});
  CHECK(c.nus == std::vector<double>{1.0});
  CHECK(c.mu_points == 101);
  CHECK(c.workers == 2);
  CHECK(c.format == Format::Csv);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("sweep takes comma separated lists") {
  const auto c = parse({"sweep", "--dims", "2,3,4", "--etas", "0.5,0.8", "--nus", "0,1", "--format", "json"});
  CHECK(c.dims == std::vector<int>{2, 3, 4});
  CHECK(c.etas == std::vector<double>{0.5, 0.8});
  CHECK(c.nus == std::vector<double>{0.0, 1.0});
  CHECK(c.format == Format::Json);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("custom state options") {
  auto c = parse({"curve", "--d", "2", "--eta", "0.5", "--nu", "0", "--state", "alpha=0.3"});
  REQUIRE(c.state);
  CHECK(c.state->kind == StateSpec::Kind::Alpha);
  CHECK(c.state->alpha == 0.3);
  c = parse({"curve", "--d", "2", "--eta", "0.5", "--nu", "0", "--alphas", "0.6,0.8", "--phis", "0,1", "--offset", "1"});
  REQUIRE(c.state);
  CHECK(c.state->kind == StateSpec::Kind::Ansatz);
  CHECK(c.state->params.offset == 1);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(parse({"curve", "--state", "bogus"}), InvalidArgument);
  CHECK_THROWS_AS(parse({"curve", "--state", "product", "--alphas", "1,0"}), InvalidArgument);
  CHECK_THROWS_AS(parse({"curve", "--phis", "0,1"}), InvalidArgument);
}

TEST_CASE("config file supplies defaults and flags override it") {
  const auto path = scratch("run.ini");
  {
    std::ofstream out(path);
    out << "model = qcd\nd = 4\neta = 0.3\nnu = 0.5\nmu-points = 11\n";
  }
  const std::string file = path.string();
  auto c = parse({"curve", "--config", file.c_str()});
  CHECK(c.model == Model::QCD);
  CHECK(c.dims == std::vector<int>{4});
  CHECK(c.etas == std::vector<double>{0.3});
  CHECK(c.mu_points == 11);
  c = parse({"curve", "--config", file.c_str(), "--eta", "0.7", "--model", "qd"});
  CHECK(c.model == Model::QD);
  CHECK(c.etas == std::vector<double>{0.7});
  CHECK(c.nus == std::vector<double>{0.5});
}

TEST_CASE("diagnostics name the offending field") {
  CHECK(error_of({"curve", "--d", "1", "--eta", "0.5", "--nu", "0"}).rfind("--d:", 0) == 0);
  CHECK(error_of({"curve", "--d", "3", "--eta", "-0.6", "--nu", "0", "--model", "qcd"}).rfind("--eta:", 0) == 0);
  CHECK(error_of({"curve", "--d", "3", "--eta", "0.5", "--nu", "1.5"}).rfind("--nu:", 0) == 0);
  CHECK(error_of({"curve", "--d", "3", "--eta", "0.5"}).rfind("--nu:", 0) == 0);
  CHECK(error_of({"curve", "--d", "3", "--eta", "0.5", "--nu", "0", "--mu-points", "1"}).rfind("--mu-points:", 0) == 0);
  CHECK(error_of({"curve", "--d", "3", "--eta", "0.5", "--nu", "0", "--mu-list", "0.5,0.2"}).rfind("--mu-list:", 0) == 0);
  CHECK(error_of({"crossover", "--d", "3", "--eta", "0.5", "--nu", "0", "--grid-n", "4"}).rfind("--grid-n:", 0) == 0);
  CHECK(error_of({"crossover", "--d", "2,3", "--eta", "0.5", "--nu", "0"}).rfind("--d:", 0) == 0);
  CHECK(error_of({"curve", "--d", "2", "--eta", "0.5", "--nu", "0", "--alphas", "0.5,0.5"}).rfind("--state/--alphas:", 0) == 0);
  CHECK_THROWS_AS(parse({"frobnicate"}), InvalidArgument);
  CHECK_THROWS_AS(parse({"curve", "--model", "xyz"}), InvalidArgument);
}

TEST_CASE("curve table over the default grid") {
  const auto config = parse({"curve", "--d", "3", "--eta", "0.8", "--nu", "1", "--workers", "1"});
  const auto table = compute_curve(config);
  REQUIRE(table.rows.size() == 101);
  CHECK(table.rows.front().mu == 0.0);
  CHECK(table.rows.back().mu == 1.0);
  CHECK(table.rows[50].mu == 0.5);
  for (const auto& row : table.rows) CHECK(row.delta == row.I_entangled - row.I_product);

  const std::string csv = render(table.to_table(), Format::Csv);
  const auto text = lines(csv);
  std::size_t header = 0;
  while (text[header].rfind("# ", 0) == 0) ++header;
  CHECK(text[header] == "mu,I_product,I_entangled,delta");
  CHECK(text.size() == header + 102);
  CHECK(csv.find("# model=qd\n") != std::string::npos);
  CHECK(csv.find("# nu=1\n") != std::string::npos);
  CHECK(csv.find("workers") == std::string::npos);
}

TEST_CASE("custom state adds a column") {
  const auto config = parse({"curve", "--d", "2", "--eta", "0.4", "--nu", "0", "--model", "qcd", "--mu-list",
                             "0,0.4,1", "--state", "max-entangled"});
  const auto table = compute_curve(config).to_table();
  CHECK(table.columns == std::vector<std::string>{"mu", "I_product", "I_entangled", "I_custom", "delta"});
  for (const auto& row : table.rows) CHECK(std::get<double>(row[3]) == std::get<double>(row[2]));
}

TEST_CASE("noiseless curve sits at 2 log2 d") {
  for (const char* d : {"2", "3", "5"}) {
    const auto table = compute_curve(parse({"curve", "--d", d, "--eta", "1", "--nu", "0.5", "--mu-points", "5"}));
    const double expected = 2 * std::log2(std::stod(d));
    for (const auto& row : table.rows) {
      CHECK(std::abs(row.I_product - expected) < 1e-10);
      CHECK(std::abs(row.I_entangled - expected) < 1e-10);
    }
  }
}

TEST_CASE("empty table renders a header only") {
  Table t;
  t.columns = {"a", "b"};
  CHECK(render(t, Format::Csv) == "a,b\n");
  const auto doc = nlohmann::json::parse(render(t, Format::Json));
  CHECK(doc["rows"].empty());
  CHECK(doc["columns"].size() == 2);
}

TEST_CASE("CSV and JSON carry the same numbers") {
  const auto config = parse({"curve", "--d", "3", "--eta", "0.6", "--nu", "0.3", "--mu-points", "7"});
  const auto table = compute_curve(config).to_table();
  const auto csv = lines(render(table, Format::Csv));
  const auto doc = nlohmann::json::parse(render(table, Format::Json));
  CHECK(doc["meta"]["d"] == "3");
  REQUIRE(doc["rows"].size() == 7);
  const std::size_t first = csv.size() - 7;
  for (std::size_t i = 0; i < 7; ++i) {
    const auto cells = split(csv[first + i]);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      // 17 significant digits round trip exactly.
      CHECK(std::stod(cells[c]) == doc["rows"][i][table.columns[c]].get<double>());
      CHECK(std::stod(cells[c]) == std::get<double>(table.rows[i][c]));
    }
  }
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS_AS(format_double(NAN), InvalidArgument);
}

TEST_CASE("output does not depend on the worker count") {
  auto a = parse({"curve", "--d", "4", "--eta", "0.8", "--nu", "1", "--mu-points", "9", "--workers", "1"});
  auto b = parse({"curve", "--d", "4", "--eta", "0.8", "--nu", "1", "--mu-points", "9", "--workers", "3"});
  CHECK(render(compute_curve(a).to_table(), Format::Csv) == render(compute_curve(b).to_table(), Format::Csv));
  a = parse({"sweep", "--d", "2,3", "--eta", "0.8", "--nu", "0,1", "--workers", "1"});
  b = parse({"sweep", "--d", "2,3", "--eta", "0.8", "--nu", "0,1", "--workers", "4"});
  CHECK(render(sweep_table(a), Format::Json) == render(sweep_table(b), Format::Json));
}

TEST_CASE("crossover record without a sign change") {
  const auto table = crossover_table(parse({"crossover", "--d", "3", "--eta", "0.8", "--nu", "0"}));
  REQUIRE(table.rows.size() == 1);
  const auto doc = nlohmann::json::parse(render(table, Format::Json));
  CHECK(doc["rows"][0]["mu_c"] == "none");
  CHECK(doc["rows"][0]["entangled_wins_above"].is_null());
  CHECK(doc["rows"][0]["d"] == 3);
}

TEST_CASE("crossover record with a sign change") {
  const auto table = crossover_table(parse({"crossover", "--d", "2", "--eta", "0.4", "--nu", "0", "--model", "qcd"}));
  const double mu_c = std::get<double>(table.rows[0][4]);
  CHECK(std::abs(mu_c - 0.4) < 1e-8);
  CHECK(std::get<std::string>(table.rows[0][9]) == "true");
}

TEST_CASE("sweep rows follow the nested input order and keep failures") {
  const auto table = sweep_table(parse({"sweep", "--model", "qcd", "--d", "2,6", "--eta", "-0.3", "--nu", "0.5"}));
  REQUIRE(table.rows.size() == 2);
  CHECK(std::get<long long>(table.rows[0][1]) == 2);
  CHECK(std::get<std::string>(table.rows[0][8]).empty());
  CHECK_FALSE(std::get<std::string>(table.rows[1][8]).empty());
  CHECK(std::holds_alternative<Null>(table.rows[1][5]));
}

TEST_CASE("run writes files and reports errors with exit codes") {
  const auto out = scratch("curve.csv");
  fs::remove(out);
  const std::string path = out.string();
  std::ostringstream diag;
  CHECK(run(parse({"curve", "--d", "2", "--eta", "0.5", "--nu", "0", "--mu-points", "3", "-o", path.c_str()}), diag) == 0);
  CHECK(lines(slurp(out)).back().rfind("1,", 0) == 0);

  const std::string bad = (scratch("missing-dir") / "nested" / "x.csv").string();
  diag.str("");
  CHECK(run(parse({"curve", "--d", "2", "--eta", "0.5", "--nu", "0", "-o", bad.c_str()}), diag) == 1);
  CHECK(diag.str().find("cannot open output file") != std::string::npos);

  diag.str("");
  CHECK(run(parse({"curve", "--d", "2", "--eta", "3", "--nu", "0"}), diag) == 2);
  CHECK(diag.str().find("--eta") != std::string::npos);
}

TEST_CASE("validate command passes") {
  const auto out = scratch("validate.csv");
  const std::string path = out.string();
  std::ostringstream diag;
  CHECK(run(parse({"validate", "-o", path.c_str()}), diag) == 0);
  CHECK(diag.str().find("FAIL") == std::string::npos);
  CHECK(diag.str().find("all properties pass") != std::string::npos);
  for (const auto& r : run_validation(3)) CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
}
