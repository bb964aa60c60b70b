#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hahn/errors.hpp"

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hahn::Error(hahn::ErrorCode::Format, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hahn::Error(hahn::ErrorCode::Format, "cannot write " + path);
  out << text;
}

struct Flags {
  std::string config;
  std::optional<unsigned> p;
  std::optional<std::string> gammaX, vS, prec;
  std::optional<std::size_t> stages;
  std::optional<std::uint64_t> seed;
  std::string out;
};

hahn::InstanceConfig resolve(const Flags& f) {
  hahn::InstanceConfig cfg = f.config.empty() ? hahn::defaultConfig() : hahn::loadConfigFile(f.config);
  if (f.p) cfg.p = *f.p;
  if (f.gammaX) cfg.gammaX = hahn::Rat::parse(*f.gammaX);
  if (f.vS) cfg.vS = hahn::Rat::parse(*f.vS);
  if (f.prec) cfg.workPrec = hahn::Rat::parse(*f.prec);
  if (f.stages) cfg.stages = *f.stages;
  if (f.seed) cfg.seed = *f.seed;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified construction and division for the Type III residue field map"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config,
                 std::string("JSON instance config (default: $") + hahn::kConfigEnv + ")");
  app.add_option("--p", flags.p, "odd prime characteristic");
  app.add_option("--gamma-x", flags.gammaX, "radius value of the Type III point, num/den");
  app.add_option("--v-s", flags.vS, "additive value of s, num/den in (0, 1)");
  app.add_option("--prec", flags.prec, "working precision (default 2(M+1))");
  app.add_option("--stages", flags.stages, "number of enumerated stages M");
  app.add_option("--seed", flags.seed, "seed for randomized self checks");
  app.add_option("--out,-o", flags.out, "output file (default stdout)");
  app.fallthrough();

  auto* build = app.add_subcommand("build", "emit the plan transcript with every certificate");
  std::string alphaPath;
  build->add_option("--alpha", alphaPath, "also write alpha to this file");

  auto* adapted = app.add_subcommand("adapted", "emit the certificate of one adapted element");
  std::string q;
  adapted->add_option("--q", q, "exponent in Z[1/p]")->required();

  auto* divide = app.add_subcommand("divide", "run the division algorithm on a target");
  std::string betaPath;
  std::optional<std::size_t> steps;
  divide->add_option("--beta", betaPath, "target series file")->required();
  divide->add_option("--steps", steps, "division steps (default M)");

  auto* classify = app.add_subcommand("classify", "Berkovich type of an origin-centered disk point");
  std::vector<std::string> radii;
  classify->add_option("radii", radii, "radius values; 'point' for radius 0")->required();

  auto* verify = app.add_subcommand("verify", "independently check a transcript, certificate or trace");
  std::string docPath;
  verify->add_option("file", docPath, "document to check")->required();

  auto* selftest = app.add_subcommand("selftest", "build, divide and verify end to end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? hahncli::kPass : hahncli::kUsage;
  }

  try {
    if (*verify) {
      const hahn::VerifyReport report = hahncli::cmdVerify(readFile(docPath));
      emit(hahncli::formatReport(report), flags.out);
      return report.ok() ? hahncli::kPass : hahncli::kContract;
    }
    const hahn::InstanceConfig cfg = resolve(flags);
    if (*build) {
      const hahncli::BuildOutput result = hahncli::cmdBuild(cfg);
      emit(result.transcript, flags.out);
      if (!alphaPath.empty()) emit(result.alpha, alphaPath);
    } else if (*adapted) {
      emit(hahncli::cmdAdapted(cfg, q), flags.out);
    } else if (*divide) {
      const hahncli::DivideOutput result =
          hahncli::cmdDivide(cfg, readFile(betaPath), steps.value_or(cfg.stages));
      if (result.shift != 0) std::cerr << "target normalized by t^" << result.shift << "\n";
      emit(result.trace, flags.out);
    } else if (*classify) {
      emit(hahncli::cmdClassify(cfg, radii), flags.out);
    } else if (*selftest) {
      return hahncli::cmdSelftest(cfg, std::cout);
    }
  } catch (const hahn::Error& e) {
    std::cerr << "hahncert: " << e.what() << "\n";
    return hahncli::exitCodeFor(e);
  }
  return hahncli::kPass;
}
