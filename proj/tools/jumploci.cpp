// jumploci <compute|betti|dual|realize|crk|oracle> --input FILE [options]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "jumploci/commands.hpp"
#include "jumploci/jumploci.hpp"
#include "jumploci/text.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomological jump loci of modules over complete intersections"};
  app.require_subcommand(1);

  std::string inputPath, outputPath, chainPath, formatName = "json";
  jumploci::CommandRequest req;
  int n = 0;
  long long seed = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", inputPath, "session file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "random seed (default: session option or 0)")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", formatName, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", outputPath, "write the report here instead of standard output");
    sub->add_option("--n", n, "truncation bound for resolutions")->check(CLI::PositiveNumber);
  };
  common(app.add_subcommand("compute", "jump loci, complexity, Betti and Bass degree"));
  common(app.add_subcommand("betti", "Betti numbers of M and M* with quasi-polynomial fits"));
  common(app.add_subcommand("dual", "compare the jump loci of M and M*"));
  auto* realize = app.add_subcommand("realize", "build and verify a complex with a prescribed chain of loci");
  common(realize);
  realize->add_option("--chain", chainPath, "chain file")->required()->check(CLI::ExistingFile);
  auto* crk = app.add_subcommand("crk", "cohomological rank at a point");
  common(crk);
  crk->add_option("--point", req.point, "coordinates a1,..,ac")->required();
  auto* oracle = app.add_subcommand("oracle", "compare crk with stable Betti numbers over hypersurfaces");
  common(oracle);
  oracle->add_option("--points", req.points, "number of random points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string path = inputPath;
  try {
    req.command = app.get_subcommands().front()->get_name();
    req.input = slurp(inputPath);
    if (!chainPath.empty()) req.chain = slurp(chainPath);
    if (n > 0) req.n = n;
    if (seed >= 0) req.seed = uint64_t(seed);
    auto result = jumploci::run_command(req);
    std::string bytes = jumploci::emit(result, formatName == "text" ? jumploci::Format::Text : jumploci::Format::Json);
    if (outputPath.empty() && result.output) outputPath = *result.output;
    if (outputPath.empty()) {
      std::cout << bytes;
    } else {
      std::ofstream out(outputPath, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot write '" + outputPath + "'");
      out << bytes;
    }
    return result.status;
  } catch (const jumploci::ParseError& e) {
    std::cerr << path << ": " << e.located() << "\n";
    return 1;
  } catch (const jumploci::RouteDisagreement& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
