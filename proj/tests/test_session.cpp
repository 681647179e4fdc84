#include <gtest/gtest.h>

#include "jumploci/commands.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_session(text);
  } catch (const ParseError& e) {
    return e.located();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

CommandResult run(const std::string& command, const std::string& file) {
  CommandRequest req;
  req.command = command;
  req.input = read_file(session_path(file));
  return run_command(req);
}

}  // namespace

TEST(SessionParser, FlagFixture) {
  auto s = load("flag.jl");
  EXPECT_EQ(s.ring.A->nvars(), 3u);
  EXPECT_EQ(s.ring.c(), 3u);
  EXPECT_EQ(s.ring.field().characteristic(), 101u);
  ASSERT_TRUE(s.module.presentation.has_value());
  EXPECT_EQ(s.module.presentation->rows(), 1u);
  EXPECT_EQ(s.module.presentation->cols(), 5u);
}

TEST(SessionParser, ComplexWithActions) {
  auto s = load("e_homotopies.jl");
  EXPECT_FALSE(s.module.presentation.has_value());
  EXPECT_EQ(s.module.differentials.size(), 2u);
  ASSERT_EQ(s.module.actions.size(), 2u);
  EXPECT_EQ(s.module.actions[0].size(), 2u);
}

TEST(SessionParser, RationalField) {
  auto any = parse_session("field QQ\nring x, y\nci x^2, y^2\nmodule coker [[x, 1/2*y]]\n");
  ASSERT_TRUE(std::holds_alternative<Session<RationalField>>(any));
  auto& s = std::get<Session<RationalField>>(any);
  EXPECT_EQ(s.module.presentation->cols(), 2u);
}

TEST(SessionParser, WeightsAndOptions) {
  auto s = std::get<Session<F>>(parse_session(
      "field GF(7) ring x, y [weights 2, 3] ci x^3, y^2 module coker [[x, y]] options n 9 seed 4 output \"o.json\""));
  EXPECT_EQ(s.ring.A->weights(), (std::vector<int>{2, 3}));
  EXPECT_EQ(s.options.n, 9);
  EXPECT_EQ(s.options.seed, 4u);
  EXPECT_EQ(s.options.output, "o.json");
}

TEST(SessionParser, ReportsNonPrimeModulus) {
  auto msg = error_of("field GF(4)\nring x\nci x^2\nmodule koszul\n");
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("4 is not prime"), std::string::npos) << msg;
}

TEST(SessionParser, ReportsInhomogeneousEntry) {
  auto msg = error_of("field GF(101)\nring x, y\nci x^2, y^2\nmodule coker [[x + 1, y]]\n");
  EXPECT_NE(msg.find("inhomogeneous entry 'x + 1'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
}

TEST(SessionParser, ReportsUnknownVariableAndMissingPieces) {
  EXPECT_NE(error_of("field GF(101)\nring x\nci x^2\nmodule coker [[w]]\n").find("line 4"), std::string::npos);
  EXPECT_THROW(parse_session("field GF(101)\nring x\nmodule koszul\n"), ParseError);
  EXPECT_THROW(parse_session("field GF(101)\nring x\nci x^2\n"), ParseError);
  EXPECT_THROW(parse_session("field GF(101)\nring x\nci x^2\nmodule koszul\nmodule koszul\n"), ParseError);
  EXPECT_THROW(parse_session("field GF(101)\nring x\nci x^2\nmodule coker [[x], [x, x]]\n"), ParseError);
}

TEST(SessionParser, RejectsBadSequence) {
  auto msg = error_of("field GF(101)\nring x, y\nci x^2*y, x + y^2\nmodule koszul\n");
  EXPECT_FALSE(msg.empty());
}

TEST(SessionPrinter, RoundTripsEveryFixture) {
  for (const char* name : {"flag.jl", "final.jl", "koszul.jl", "e_homotopies.jl", "perfect.jl"}) {
    auto s = load(name);
    auto text = print_session(s);
    auto again = std::get<Session<F>>(parse_session(text));
    EXPECT_TRUE(same_session(s, again)) << name << "\n" << text;
    EXPECT_EQ(print_session(again), text) << name;
  }
}

TEST(SessionPrinter, RoundTripsWeightsRowDegreesAndOptions) {
  auto s = std::get<Session<F>>(parse_session(
      "field GF(7) ring x, y weights 2, 3 ci x^3, y^2 module coker [[x, y], [0, x]] rowdegrees 0, 1 "
      "options n 9 output \"o.json\""));
  auto again = std::get<Session<F>>(parse_session(print_session(s)));
  EXPECT_TRUE(same_session(s, again));
}

TEST(ChainParser, FlagChain) {
  auto s = load("flag.jl");
  auto c = parse_chain(read_file(session_path("flag_chain.jl")), s.ring);
  EXPECT_EQ(c.nu, 2);
  ASSERT_EQ(c.chain.size(), 4u);
  EXPECT_TRUE(c.chain.front().is_zero());
  EXPECT_TRUE(c.chain.back().is_unit());
  EXPECT_THROW(parse_chain("locus chi1 + chi2^2", s.ring), ParseError);
}

TEST(Commands, ComputeIsByteIdenticalAcrossRuns) {
  auto a = emit(run("compute", "flag.jl"), Format::Json);
  auto b = emit(run("compute", "flag.jl"), Format::Json);
  EXPECT_EQ(a, b);
  auto j = run("compute", "flag.jl").json;
  EXPECT_EQ(j["rank"], 16);
  EXPECT_EQ(j["jump_numbers"], Json::parse("[8, 12, 14, 16]"));
  EXPECT_EQ(j["bass_degree"], 4);
  EXPECT_TRUE(j["loci"].back()["i_to"].is_null());
}

TEST(Commands, ComputeKeyOrder) {
  auto j = run("compute", "koszul.jl").json;
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"rank", "jump_numbers", "loci", "complexity", "betti_degree",
                                            "bass_degree", "duality"}));
  EXPECT_EQ(j["loci"][0]["ideal"], Json::array());
  EXPECT_EQ(j["loci"][1]["ideal"], Json::parse("[\"1\"]"));
  EXPECT_EQ(j["loci"][1]["dim"], -1);
}

TEST(Commands, PerfectModuleHasNullBettiDegree) {
  auto j = run("compute", "perfect.jl").json;
  EXPECT_EQ(j["complexity"], 0);
  EXPECT_TRUE(j["betti_degree"].is_null());
  EXPECT_TRUE(j["bass_degree"].is_null());
}

TEST(Commands, BettiOfFinalExample) {
  auto r = run("betti", "final.jl");
  EXPECT_EQ(r.status, 0);
  auto& m = r.json["M"];
  EXPECT_EQ(m["betti"][4], 7);
  EXPECT_EQ(m["quasi_polynomial"]["even"], "3/2*i + 1");
  EXPECT_EQ(m["quasi_polynomial"]["odd"], "3/2*i + 3/2");
  EXPECT_EQ(m["betti_degree"], "3");
  EXPECT_EQ(r.json["M*"]["betti"][0], 2);
  EXPECT_EQ(r.json["M*"]["betti_degree"], "3");
}

TEST(Commands, DualAgrees) {
  auto r = run("dual", "final.jl");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.json["duality"]["per_index_equal"], true);
  EXPECT_EQ(r.json["duality"]["bdeg_equal"], true);
}

TEST(Commands, CrkAtPoint) {
  CommandRequest req;
  req.command = "crk";
  req.input = read_file(session_path("flag.jl"));
  req.point = "1,0,0";
  auto r = run_command(req);
  EXPECT_EQ(r.json["crk"], 12);
  EXPECT_EQ(r.json["crk_generic"], 8);
  req.point = "1,0";
  EXPECT_THROW(run_command(req), std::invalid_argument);
}

TEST(Commands, OracleAgrees) {
  CommandRequest req;
  req.command = "oracle";
  req.input = read_file(session_path("final.jl"));
  req.points = 4;
  auto r = run_command(req);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.json["points"].size(), 4u);
  EXPECT_EQ(r.json["all_agree"], true);
}

TEST(Commands, RealizeFlagChain) {
  CommandRequest req;
  req.command = "realize";
  req.input = read_file(session_path("flag.jl"));
  req.chain = read_file(session_path("flag_chain.jl"));
  auto r = run_command(req);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.json["verified"], true);
  EXPECT_EQ(r.json["plateau_ends"], Json::parse("[0, 8, 24]"));
}

TEST(Commands, TextFormatAndOutputOption) {
  auto r = run("compute", "final.jl");
  EXPECT_FALSE(emit(r, Format::Text).empty());
  EXPECT_FALSE(r.output.has_value());
  CommandRequest req;
  req.command = "compute";
  req.input = "field GF(101) ring x ci x^2 module koszul options output \"r.json\"";
  EXPECT_EQ(run_command(req).output, "r.json");
  req.command = "bogus";
  EXPECT_THROW(run_command(req), std::invalid_argument);
}
