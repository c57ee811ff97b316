// minflow: command-line front end of the symbolic-dynamics library.
//
// Every subcommand prints its report on stdout. When --out or MINFLOW_OUT
// names a directory, the same report is also written there as
// <subcommand>.json (or .tsv). Exit status: 0 success, 1 failed check or
// computation error, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minflow/error.hpp"
#include "minflow/report.hpp"

using namespace minflow;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string system;
  std::vector<std::string> points;
  std::string out;
  std::string format = "json";
  std::string expect;
  std::string address;
  std::string direction = "both";
  std::string word;
  std::size_t length = 3;
  std::size_t complexity = 0;
  std::size_t check_len = 4096;
  std::size_t steps = 1u << 16;
  std::int64_t horizon = kDefaultHorizon;
  std::int64_t resolution = kDefaultResolution;
  std::int64_t lo = -16, hi = 16;
  std::int64_t stride = 64;
  int radius = 1;
  int radius_budget = 4;
  int levels = 12;
  int reach = 8;
  int sample = 0;
  std::uint64_t seed = 20250101;
};

SystemPtr load_system(const std::string& name) {
  try {
    return make_system(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void check(const Options& o, const std::string& actual) {
  if (!o.expect.empty() && o.expect != actual)
    throw CheckFailed("expected '" + o.expect + "', got '" + actual + "'");
}

void emit(const Options& o, const std::string& name, const std::string& text, const char* ext) {
  std::cout << text;
  std::string dir = o.out;
  if (dir.empty())
    if (const char* env = std::getenv("MINFLOW_OUT")) dir = env;
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream f(std::filesystem::path(dir) / (name + ext), std::ios::binary);
  f << text;
  if (!f) throw Error("cannot write report into '" + dir + "'");
}

void emit_json(const Options& o, const std::string& name, const Json& j) {
  emit(o, name, dump(j), ".json");
}

Point point_arg(const SystemPtr& sys, const Options& o, std::size_t i) {
  if (i >= o.points.size()) throw UsageError("missing point argument");
  return parse_point(sys, o.points[i]);
}

// Reads key=value lines; '#' starts a comment.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(f, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    tokens.push_back("--" + trim(line.substr(0, eq)));
    tokens.push_back(trim(line.substr(eq + 1)));
  }
  return tokens;
}

// Config values are placed right after the subcommand so that explicit
// arguments, parsed later, win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::vector<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" || args[i].starts_with("--config=")) {
      std::string path;
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw UsageError("--config needs a file");
        path = args[i + 1];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      } else {
        path = args[i].substr(9);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      }
      auto t = config_tokens(path);
      config.insert(config.end(), t.begin(), t.end());
      --i;
    }
  }
  if (!config.empty() && args.size() > 1)
    args.insert(args.begin() + 2, config.begin(), config.end());
  return args;
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{"minflow: automorphisms, proximality and odometer factors of substitution subshifts"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.footer(
      "--config FILE (any position) reads key=value lines such as 'horizon=65536'; explicit\n"
      "arguments override them. MINFLOW_OUT sets the report directory when --out is absent.");

  auto sys_arg = [&](CLI::App* c) {
    c->add_option("system", o.system, "morse | fibonacci | period-doubling | full2")->required();
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Directory for report files (default: $MINFLOW_OUT)");
    c->add_option("--expect", o.expect, "Fail with status 1 unless the headline result equals this");
  };

  auto* lang = app.add_subcommand("lang", "Admissible words of a given length");
  sys_arg(lang);
  lang->add_option("--length", o.length, "Word length")->capture_default_str();
  lang->add_option("--complexity", o.complexity, "Instead print p(1..N)");
  common(lang);

  auto* point = app.add_subcommand("point", "Evaluate a point on a window");
  sys_arg(point);
  point->add_option("spec", o.points, "Point constructor, e.g. splice(rev(fix0),fix0)")->required();
  point->add_option("--lo", o.lo)->capture_default_str();
  point->add_option("--hi", o.hi)->capture_default_str();
  common(point);

  auto* aut = app.add_subcommand("aut", "Enumerate endomorphism codes of a radius");
  sys_arg(aut);
  aut->add_option("--radius", o.radius)->capture_default_str();
  aut->add_option("--check-len", o.check_len)->capture_default_str();
  common(aut);

  auto* pairs = app.add_subcommand("pairs", "Classify a pair of points");
  sys_arg(pairs);
  pairs->add_option("points", o.points, "Two point constructors")->expected(2)->required();
  pairs->add_option("--horizon", o.horizon)->capture_default_str();
  pairs->add_option("--resolution", o.resolution)->capture_default_str();
  common(pairs);

  auto* collapse = app.add_subcommand("collapse", "Asymptotic collapse of a fiber (default: the seam fiber)");
  sys_arg(collapse);
  collapse->add_option("points", o.points, "Fiber points");
  collapse->add_option("--direction", o.direction, "forward | backward | both")->capture_default_str();
  collapse->add_option("--horizon", o.horizon)->capture_default_str();
  collapse->add_option("--resolution", o.resolution)->capture_default_str();
  common(collapse);

  auto* factor = app.add_subcommand("factor", "Odometer address of a point, or the parse of a word");
  sys_arg(factor);
  factor->add_option("spec", o.points, "Point constructor");
  factor->add_option("--levels", o.levels)->capture_default_str();
  factor->add_option("--word", o.word, "Desubstitute this word instead");
  common(factor);

  auto* census = app.add_subcommand("census", "Windows over an odometer address");
  sys_arg(census);
  census->add_option("--address", o.address, "Digits, least significant first");
  census->add_option("--resolution", o.resolution)->capture_default_str();
  census->add_option("--sample", o.sample, "Census at N random addresses of --levels digits instead");
  census->add_option("--levels", o.levels)->capture_default_str();
  census->add_option("--seed", o.seed, "Seed of the mt19937_64 address sampler")->capture_default_str();
  common(census);

  auto* freq = app.add_subcommand("freq", "Word frequencies along the generated sequence");
  sys_arg(freq);
  freq->add_option("--length", o.length)->capture_default_str();
  freq->add_option("--steps", o.steps)->capture_default_str();
  freq->add_option("--format", o.format, "tsv | json")->capture_default_str();
  common(freq);

  auto* join = app.add_subcommand("join", "Joint windows of points along their common orbit");
  sys_arg(join);
  join->add_option("points", o.points, "Two or more point constructors")->required();
  join->add_option("--resolution", o.resolution)->capture_default_str();
  join->add_option("--steps", o.steps)->capture_default_str();
  join->add_option("--levels", o.levels, "Address level of the difference check (pairs only)")
      ->capture_default_str();
  join->add_option("--stride", o.stride, "Time stride of the difference check")->capture_default_str();
  common(join);

  auto* dich = app.add_subcommand("dichotomy", "Case 1 / Case 2 analysis of (x0, x)");
  sys_arg(dich);
  dich->add_option("points", o.points, "x0 and x")->expected(2)->required();
  dich->add_option("--resolution", o.resolution)->capture_default_str();
  dich->add_option("--steps", o.steps)->capture_default_str();
  dich->add_option("--radius-budget", o.radius_budget)->capture_default_str();
  dich->add_option("--levels", o.levels, "Levels of the distal certificate")->capture_default_str();
  dich->add_option("--horizon", o.horizon, "Horizon of the distal certificate")->capture_default_str();
  common(dich);

  auto* sr = app.add_subcommand("sr", "Semi-regularity report (system 'odometer' allowed)");
  sys_arg(sr);
  sr->add_option("points", o.points, "Base point x0 (default: the alternating-address point)");
  sr->add_option("--reach", o.reach, "Candidates S^k x0 and flip(S^k x0), |k| <= reach")
      ->capture_default_str();
  sr->add_option("--radius", o.radius, "Radius of the automorphism enumeration")->capture_default_str();
  sr->add_option("--radius-budget", o.radius_budget)->capture_default_str();
  sr->add_option("--resolution", o.resolution)->capture_default_str();
  sr->add_option("--steps", o.steps)->capture_default_str();
  sr->add_option("--levels", o.levels)->capture_default_str();
  common(sr);

  auto* coal = app.add_subcommand("coalesce", "Flag endomorphism codes without a bounded inverse");
  sys_arg(coal);
  coal->add_option("--radius", o.radius)->capture_default_str();
  coal->add_option("--check-len", o.check_len)->capture_default_str();
  common(coal);

  auto* odo = app.add_subcommand("odometer", "Translations of Z/2^k commuting with +1");
  odo->add_option("--levels", o.levels)->capture_default_str();
  common(odo);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(args);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();

    if (name == "odometer" || (name == "sr" && o.system == "odometer")) {
      if (name == "odometer") {
        auto w = odometer_sr_witness(o.levels);
        emit_json(o, name, to_json(w));
        check(o, std::to_string(w.translations));
        return w.ok ? 0 : 1;
      }
      auto rep = sr_report_odometer(o.levels);
      emit_json(o, name, to_json(rep));
      check(o, rep.verdict);
      return 0;
    }

    auto sys = load_system(o.system);

    if (name == "lang") {
      if (o.complexity > 0) {
        std::ostringstream s;
        auto c = sys->complexity(o.complexity);
        for (std::size_t i = 0; i < c.size(); ++i) s << i + 1 << '\t' << c[i] << '\n';
        emit(o, name, s.str(), ".tsv");
      } else {
        const auto& words = sys->language(o.length);
        emit(o, name, format_words(words), ".txt");
        check(o, std::to_string(words.size()));
      }
    } else if (name == "point") {
      auto p = point_arg(sys, o, 0);
      Json j{{"point", p.describe()}, {"lo", o.lo}, {"hi", o.hi}, {"window", p.window(o.lo, o.hi)}};
      auto range = p.determined_range();
      j["determined_range"] = range ? Json{range->first, range->second} : Json(nullptr);
      emit_json(o, name, j);
    } else if (name == "aut") {
      auto r = enumerate_endomorphisms(sys, o.radius, {o.check_len});
      emit_json(o, name, to_json(r));
      check(o, std::to_string(r.codes.size()));
    } else if (name == "pairs") {
      auto c = classify_pair(point_arg(sys, o, 0), point_arg(sys, o, 1), o.horizon, o.resolution);
      emit_json(o, name, to_json(c));
      check(o, to_string(c.verdict));
    } else if (name == "collapse") {
      std::vector<Point> fiber;
      std::vector<std::string> labels;
      if (o.points.empty()) {
        fiber = seam_fiber(sys).all();
        labels = {"mu", "mu_prime", "nu", "nu_prime"};
      } else {
        for (std::size_t i = 0; i < o.points.size(); ++i) fiber.push_back(point_arg(sys, o, i));
        labels = o.points;
      }
      Json j{{"points", labels}, {"H", o.horizon}, {"L", o.resolution}};
      auto classes = [&](Direction d) {
        Json a = Json::array();
        for (const auto& cls : asymptotic_collapse(fiber, d, o.horizon, o.resolution)) {
          Json c = Json::array();
          for (int i : cls) c.push_back(labels[static_cast<std::size_t>(i)]);
          a.push_back(c);
        }
        return a;
      };
      if (o.direction == "forward" || o.direction == "both") j["forward"] = classes(Direction::forward);
      if (o.direction == "backward" || o.direction == "both") j["backward"] = classes(Direction::backward);
      if (!j.contains("forward") && !j.contains("backward"))
        throw UsageError("direction must be forward, backward or both");
      emit_json(o, name, j);
    } else if (name == "factor") {
      if (!o.word.empty()) {
        auto d = desubstitute(*sys, o.word);
        emit_json(o, name, Json{{"word", o.word}, {"preimage", d.preimage}, {"offset", d.offset}});
      } else {
        auto p = point_arg(sys, o, 0);
        auto a = address(p, o.levels);
        emit_json(o, name, Json{{"point", p.describe()}, {"levels", o.levels}, {"address", a.to_string()}});
        check(o, a.to_string());
      }
    } else if (name == "census") {
      const int L = static_cast<int>(o.resolution);
      if (o.sample > 0) {
        std::mt19937_64 rng(o.seed);
        Json a = Json::array();
        for (int s = 0; s < o.sample; ++s) {
          std::vector<int> digits(static_cast<std::size_t>(o.levels));
          for (auto& d : digits) d = static_cast<int>(rng() & 1u);
          a.push_back(to_json(fiber_census(sys, OdometerAddress(digits), L)));
        }
        emit_json(o, name, Json{{"generator", "mt19937_64"}, {"seed", o.seed}, {"censuses", a}});
      } else {
        auto c = fiber_census(sys, OdometerAddress::parse(o.address), L);
        emit_json(o, name, to_json(c));
        check(o, std::to_string(c.quotient_cardinality));
      }
    } else if (name == "freq") {
      auto t = word_frequencies(sys, o.length, o.steps);
      if (o.format == "tsv") emit(o, name, format_frequency_tsv(t), ".tsv");
      else if (o.format == "json") emit_json(o, name, to_json(t));
      else throw UsageError("format must be tsv or json");
    } else if (name == "join") {
      std::vector<Point> ps;
      for (std::size_t i = 0; i < o.points.size(); ++i) ps.push_back(point_arg(sys, o, i));
      const auto T = static_cast<std::int64_t>(o.steps);
      if (ps.size() == 2) {
        auto w = joint_language(ps[0], ps[1], o.resolution, T);
        Json j = to_json(w);
        if (sys->substitution().constant_length() == 2) {
          auto diffs = address_differences(ps[0], ps[1], T, o.levels, o.stride);
          j["address_differences"] = diffs;
          j["address_levels"] = o.levels;
          j["address_stride"] = o.stride;
        }
        emit_json(o, name, j);
      } else {
        auto t = joint_tuples(ps, o.resolution, T);
        emit_json(o, name, Json{{"L", t.resolution}, {"T", t.steps}, {"points", o.points}, {"tuples", t.tuples.size()}});
      }
    } else if (name == "dichotomy") {
      auto x0 = point_arg(sys, o, 0);
      auto x = point_arg(sys, o, 1);
      auto cert = distal_certificate(x0, o.horizon, kDefaultResolution, o.levels);
      auto v = dichotomy(x0, cert, x, {o.resolution, static_cast<std::int64_t>(o.steps), o.radius_budget});
      Json j = to_json(v);
      emit_json(o, name, j);
      check(o, to_string(v.kind));
    } else if (name == "sr") {
      SrParams params;
      params.code_radius = o.radius;
      params.dichotomy = {o.resolution, static_cast<std::int64_t>(o.steps), o.radius_budget};
      params.certificate_levels = o.levels;
      std::optional<Point> x0;
      std::vector<Point> candidates;
      if (!sys->is_full_shift() && sys->substitution().constant_length() == 2) {
        x0 = o.points.empty() ? alternating_point(sys) : point_arg(sys, o, 0);
        candidates = shift_flip_candidates(*x0, o.reach);
      }
      auto rep = sr_report(sys, x0, candidates, params);
      emit_json(o, name, to_json(rep));
      check(o, rep.verdict);
    } else if (name == "coalesce") {
      auto rep = coalescence_check(sys, o.radius, o.check_len);
      emit_json(o, name, to_json(rep));
      check(o, std::to_string(rep.flagged.size()));
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
