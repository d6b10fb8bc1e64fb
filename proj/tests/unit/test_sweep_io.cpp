#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wlike/commands.hpp"
#include "wlike/protocols.hpp"
#include "wlike/sweep_io.hpp"

using namespace wlike;

namespace {

std::string csv_of(SweepKind kind, const std::vector<SweepRecord>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, kind, rows);
  return out.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(RunConfig config) {
  std::ostringstream out, err;
  const int code = run_command(config, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto eps = expand_grid(parse_grid("0:1:0.01"));
  REQUIRE(eps.size() == 101);
  CHECK(eps.front() == 0.0);
  CHECK(eps.back() == 1.0);
  CHECK(format_number(eps[7]) == "0.07");

  const auto single = expand_int_grid(parse_grid("5"));
  CHECK(single == std::vector<int>{5});
  CHECK(expand_int_grid(parse_grid("2:10:4")) == std::vector<int>{2, 6, 10});
  CHECK(expand_int_grid(parse_grid("2:11:4")) == std::vector<int>{2, 6, 10});

  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("3:2:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:2:1"), std::invalid_argument);
  CHECK_THROWS_AS(expand_int_grid(parse_grid("1:2:0.5")), std::invalid_argument);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(23.0 / 144.0) == "0.159722222222");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("csv headers and rows") {
  const auto rows = sweep_random({2}, {1}, 1);
  const std::string csv = csv_of(SweepKind::random, rows);
  CHECK(csv.rfind("D,M,q,i_ab,i_ae,rate,rate_clamped\n2,1,0.159722222222,", 0) == 0);
  CHECK(csv.back() == '\n');
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.substr(csv.size() - 3) == ",0\n");

  const auto filter = sweep_filter(3, {3000}, {0.17}, 1);
  const std::string fcsv = csv_of(SweepKind::filter, filter);
  CHECK(fcsv.rfind("N,D,epsilon,q,i_ab,i_ae,rate,rate_clamped\n3,3000,0.17,", 0) == 0);
  REQUIRE(filter[0].rate > 0.0);
  CHECK(filter[0].rate_clamped() == filter[0].rate);
}

TEST_CASE("csv is byte-identical across runs and thread counts") {
  const auto ds = expand_int_grid(parse_grid("100:3000:100"));
  const auto eps = expand_grid(parse_grid("0:1:0.05"));
  const std::string base = csv_of(SweepKind::filter, sweep_filter(3, ds, eps, 1));
  CHECK(base == csv_of(SweepKind::filter, sweep_filter(3, ds, eps, 1)));
  for (int threads : {2, 3, 8}) CHECK(base == csv_of(SweepKind::filter, sweep_filter(3, ds, eps, threads)));

  const auto ms = expand_int_grid(parse_grid("1:30:1"));
  const std::string rbase = csv_of(SweepKind::random, sweep_random(ds, ms, 1));
  CHECK(rbase == csv_of(SweepKind::random, sweep_random(ds, ms, 5)));
}

TEST_CASE("json and svg renderings") {
  const auto rows = sweep_filter(3, {100, 200}, {0.0, 1.0}, 1);
  std::ostringstream json;
  write_sweep_json(json, SweepKind::filter, rows);
  const auto parsed = nlohmann::json::parse(json.str());
  REQUIRE(parsed.size() == 4);
  CHECK(parsed[1]["epsilon"] == 1.0);
  CHECK(parsed[2]["D"] == 200);

  std::ostringstream svg;
  write_sweep_svg(svg, SweepKind::filter, rows);
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK(svg.str().find("<script") == std::string::npos);
}

TEST_CASE("command exit codes") {
  RunConfig c;
  c.command = "construct";
  c.shield_dim = 3;
  const auto r = run(c);
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("no built-in unitary for D=3") != std::string::npos);

  RunConfig ppt;
  ppt.command = "ppt-check";
  CHECK(run(ppt).code == kExitOk);
  ppt.party = 2;
  const auto single = run(ppt);
  CHECK(single.code == kExitOk);
  CHECK(single.out.find("party 2:") != std::string::npos);
  CHECK(single.out.find("party 1:") == std::string::npos);
  ppt.party = 4;
  CHECK(run(ppt).code == kExitUsage);
  ppt.party.reset();
  ppt.state = "w";
  CHECK(run(ppt).code == kExitCheckFailed);

  RunConfig mk;
  mk.command = "multikey";
  mk.rates = {0.2, 0.2, 0.2};
  const auto ok = run(mk);
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("triangle: 0.3") != std::string::npos);
  CHECK(ok.out.find("chain N=3: 0.1") != std::string::npos);
  mk.rates = {0.1, 0.2, 0.5};
  CHECK(run(mk).code == kExitCheckFailed);
  mk.rates.clear();
  CHECK(run(mk).code == kExitUsage);

  RunConfig th;
  th.command = "thresholds";
  th.mode = "random";
  th.rounds = 1;
  th.d_grid = "2:10:1";
  const auto none = run(th);
  CHECK(none.code == kExitCheckFailed);
  CHECK(none.out.find("no threshold in range") != std::string::npos);

  RunConfig sweep;
  sweep.command = "sweep-random";
  sweep.d_grid = "2";
  sweep.rounds = 1;
  const auto one_row = run(sweep);
  CHECK(one_row.code == kExitOk);
  CHECK(one_row.out.rfind("D,M,q,i_ab,i_ae,rate,rate_clamped\n2,1,0.159722222222,", 0) == 0);
  CHECK(std::count(one_row.out.begin(), one_row.out.end(), '\n') == 2);

  RunConfig unknown;
  unknown.command = "nope";
  CHECK(run(unknown).code == kExitUsage);
}
