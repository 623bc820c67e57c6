// dynkin: command line front end.
//
//   dynkin solve GAME [--eta E] [--out FILE]
//   dynkin equilibrium GAME [--eta E] [--pure] [--out FILE]
//   dynkin verify GAME [--profile FILE] [--gap-threshold T]
//   dynkin invariants GAME [--eta E]
//   dynkin generate [--family F] [--depth D] [--branching B] [--seed S] [--out FILE]
//
// Exit codes: 0 ok, 1 usage, 2 schema, 3 invariant failure, 4 gap threshold
// exceeded, 5 internal model violation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dynkin/equilibrium.hpp"
#include "dynkin/error.hpp"
#include "dynkin/generate.hpp"
#include "dynkin/io.hpp"
#include "dynkin/verify.hpp"
#include "dynkin/zerosum.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace dynkin;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kSchema = 2, kInvariant = 3, kGap = 4, kModel = 5 };

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  std::string profile;
  double eta = 0.05;
  double tol = kDefaultTol;
  double gap_threshold = -1.0;
  bool pure = false;
  int jobs = 1;
  bool eta_given = false;
};

// Result of one file: text for stdout (or the output file) and an exit code.
struct Outcome {
  int code = kOk;
  std::string text;
  std::string diagnostics;
};

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

Game load_checked(const std::string& path, Instance* keep = nullptr) {
  Instance inst = load_instance(path);
  const std::vector<Diagnostic> diags = validate_instance(inst.game);
  if (!diags.empty()) {
    std::string msg = path + ": invalid instance";
    for (const Diagnostic& d : diags) msg += "\n  node " + std::to_string(d.node) + ": " + d.message;
    throw Failure(kSchema, msg);
  }
  Game g = inst.game;
  if (keep) *keep = std::move(inst);
  return g;
}

std::string fmt(double v) { return format_number(v); }

Outcome run_solve(const std::string& path, const Options& o) {
  const Game game = load_checked(path);
  const ValueProcess v1 = solve_value_process(game, Player::One, o.tol);
  const ValueProcess v2 = solve_value_process(game, Player::Two, o.tol);
  const HittingTime mu1 = hitting_time(game, v1, o.eta, o.tol);
  const HittingTime mu2 = hitting_time(game, v2, o.eta, o.tol);
  SolveTable table{&game, &v1, &v2, &mu1, &mu2, {}, std::nullopt};
  const EquilibriumReport report = construct(game, o.eta, o.tol);
  for (const CaseLabel& l : report.trace) table.labels.push_back(l);
  table.gaps = report.gaps;
  return {kOk, solve_csv(table), {}};
}

Outcome run_equilibrium(const std::string& path, const Options& o) {
  const Game game = load_checked(path);
  if (o.pure) {
    try {
      require_convexity(game, Player::One, o.tol);
      require_convexity(game, Player::Two, o.tol);
    } catch (const PreconditionError& e) {
      throw Failure(kInvariant, e.what());
    }
  }
  const EquilibriumReport report = o.pure ? construct_pure(game, o.eta, o.tol) : construct(game, o.eta, o.tol);
  Outcome out{kOk, dump_instance(report_instance(report)), {}};
  std::ostringstream os;
  os << path << ": case " << to_string(report.root_case) << ", payoffs (" << fmt(report.payoffs.g1) << ", "
     << fmt(report.payoffs.g2) << "), gaps (" << fmt(report.gaps.player1.gap) << ", " << fmt(report.gaps.player2.gap)
     << ")\n";
  out.diagnostics = os.str();
  if (o.gap_threshold >= 0.0 && report.gaps.max() > o.gap_threshold) out.code = kGap;
  return out;
}

Outcome run_verify(const std::string& path, const Options& o) {
  Instance inst;
  const Game game = load_checked(path, &inst);
  BehavioralProfile profile;
  if (!o.profile.empty()) {
    std::ifstream in(o.profile, std::ios::binary);
    if (!in) throw Failure(kSchema, "cannot open " + o.profile);
    std::ostringstream text;
    text << in.rdbuf();
    profile = parse_profile(text.str(), game.tree.size());
  } else if (inst.profile) {
    profile = *inst.profile;
  } else {
    throw Failure(kUsage, path + ": no profile embedded; pass --profile");
  }
  try {
    validate_profile(game, profile);
  } catch (const PreconditionError& e) {
    throw Failure(kSchema, std::string(path) + ": " + e.what());
  }

  double eta = o.eta;
  if (!o.eta_given && inst.report) {
    const auto rep = nlohmann::json::parse(*inst.report);
    if (rep.contains("eta") && rep["eta"].is_number()) eta = rep["eta"].get<double>();
  }
  const double threshold = o.gap_threshold >= 0.0 ? o.gap_threshold : (13.0 * eta + o.tol) * game.scale();
  const GapPair gaps = deviation_gap(game, profile);

  std::ostringstream os;
  os << "player,best_response,path_value,raw_gap,gap\n";
  for (Player p : {Player::One, Player::Two}) {
    const GapCertificate& c = gaps.of(p);
    os << number_of(p) << ',' << fmt(c.best_response) << ',' << fmt(c.path_value) << ',' << fmt(c.raw_gap) << ','
       << fmt(c.gap) << '\n';
  }
  os << "threshold," << fmt(threshold) << ",,,\n";
  return {gaps.max() <= threshold ? kOk : kGap, os.str(), {}};
}

Outcome run_invariants(const std::string& path, const Options& o) {
  const Game game = load_checked(path);
  const InvariantReport report = check_invariants(game, o.eta, o.tol);
  std::ostringstream os;
  os << "invariant,passed,worst,witness,detail\n";
  for (const InvariantResult& r : report.results) {
    os << r.name << ',' << (r.passed ? "yes" : "no") << ',' << fmt(r.worst) << ','
       << (r.witness ? std::to_string(*r.witness) : std::string()) << ",\"" << r.detail << "\"\n";
  }
  return {report.all_passed() ? kOk : kInvariant, os.str(), {}};
}

Outcome guarded(const std::string& path, const Options& o, Outcome (*fn)(const std::string&, const Options&)) {
  try {
    return fn(path, o);
  } catch (const Failure& e) {
    return {e.code, {}, std::string("dynkin: ") + e.what() + "\n"};
  } catch (const SchemaError& e) {
    return {kSchema, {}, "dynkin: " + path + ": " + e.what() + "\n"};
  } catch (const ModelViolation& e) {
    return {kModel, {}, "dynkin: " + path + ": model violation: " + e.what() + "\n"};
  } catch (const PreconditionError& e) {
    return {kUsage, {}, "dynkin: " + path + ": " + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kUsage, {}, "dynkin: " + path + ": " + e.what() + "\n"};
  }
}

std::string output_for(const Options& o, const std::string& input, const std::string& ext) {
  if (o.out.empty()) return {};
  if (o.inputs.size() == 1) return o.out;
  return (fs::path(o.out) / (fs::path(input).stem().string() + ext)).string();
}

int run_batch(const Options& o, const std::string& ext, Outcome (*fn)(const std::string&, const Options&)) {
  if (o.inputs.size() > 1 && !o.out.empty()) fs::create_directories(o.out);
  std::vector<Outcome> results(o.inputs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < o.inputs.size(); i = next++) results[i] = guarded(o.inputs[i], o, fn);
  };
  const int jobs = std::clamp<int>(o.jobs, 1, static_cast<int>(o.inputs.size()));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    const Outcome& r = results[i];
    std::cerr << r.diagnostics;
    if (!r.text.empty()) {
      const std::string dest = output_for(o, o.inputs[i], ext);
      if (dest.empty()) {
        std::cout << r.text;
      } else {
        std::ofstream f(dest, std::ios::binary);
        f << r.text;
        if (!f) {
          std::cerr << "dynkin: cannot write " << dest << '\n';
          code = std::max(code, static_cast<int>(kUsage));
        }
      }
    }
    code = std::max(code, r.code);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of two-player stopping games on finite event trees"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub, bool with_eta) {
    sub->add_option("inputs", o.inputs, "Game files")->required()->check(CLI::ExistingFile);
    sub->add_option("--tol", o.tol, "Comparison tolerance before scaling by max(1, range)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o.out, "Output file (a directory when several inputs are given)");
    sub->add_option("--jobs", o.jobs, "Files processed in parallel")->check(CLI::PositiveNumber);
    if (with_eta) {
      sub->add_option("--eta", o.eta, "Hitting threshold eta > 0")->check(CLI::PositiveNumber)->each([&](const std::string&) {
        o.eta_given = true;
      });
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "Value processes and hitting times as CSV");
  common(solve, true);
  CLI::App* eq = app.add_subcommand("equilibrium", "Construct an approximate equilibrium");
  common(eq, true);
  eq->add_flag("--pure", o.pure, "Non-randomized construction (needs Z between X and Y)");
  eq->add_option("--gap-threshold", o.gap_threshold, "Exit 4 when a certified gap exceeds this")
      ->check(CLI::NonNegativeNumber);
  CLI::App* verify = app.add_subcommand("verify", "Certify the deviation gaps of a profile");
  common(verify, true);
  verify->add_option("--profile", o.profile, "Profile file (default: the one embedded in the game file)")
      ->check(CLI::ExistingFile);
  verify->add_option("--gap-threshold", o.gap_threshold, "Largest acceptable gap (default 13*eta + tol, scaled)")
      ->check(CLI::NonNegativeNumber);
  CLI::App* inv = app.add_subcommand("invariants", "Run the value-process invariant suite");
  common(inv, true);

  CLI::App* gen = app.add_subcommand("generate", "Emit a random instance");
  GeneratorSpec spec;
  std::string family = "random";
  gen->add_option("--family", family, "war-of-attrition, preemption or random")
      ->check(CLI::IsMember({"war-of-attrition", "preemption", "random"}));
  gen->add_option("--depth", spec.depth, "Horizon")->check(CLI::NonNegativeNumber);
  gen->add_option("--branching", spec.branching, "Largest number of children per node")->check(CLI::PositiveNumber);
  gen->add_option("--range", spec.range, "Payoff magnitude")->check(CLI::PositiveNumber);
  gen->add_flag("--zero-sum", spec.zero_sum, "Player 2 receives the negation of player 1's payoffs");
  gen->add_flag("--convex", spec.convex, "Clamp Z between X and Y for both players");
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--out", o.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*gen) {
    try {
      spec.family = parse_family(family);
      Instance inst;
      inst.game = generate(spec);
      nlohmann::json meta = {{"family", family},       {"depth", spec.depth},     {"branching", spec.branching},
                             {"range", spec.range},    {"zero_sum", spec.zero_sum}, {"convex", spec.convex},
                             {"seed", spec.seed}};
      inst.meta = meta.dump();
      const std::string text = dump_instance(inst);
      if (o.out.empty()) {
        std::cout << text;
      } else {
        save_instance(o.out, inst);
      }
    } catch (const std::exception& e) {
      std::cerr << "dynkin: " << e.what() << '\n';
      return kUsage;
    }
    return kOk;
  }
  if (*solve) return run_batch(o, ".csv", run_solve);
  if (*eq) return run_batch(o, ".json", run_equilibrium);
  if (*verify) return run_batch(o, ".csv", run_verify);
  if (*inv) return run_batch(o, ".csv", run_invariants);
  return kUsage;
}
