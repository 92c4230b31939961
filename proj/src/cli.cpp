#include "crnbound/cli.hpp"

#include "crnbound/campaign.hpp"
#include "crnbound/certificates.hpp"
#include "crnbound/certifier.hpp"
#include "crnbound/graph.hpp"
#include "crnbound/integrator.hpp"
#include "crnbound/parser.hpp"
#include "crnbound/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace crn::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string x0;
  double t_end = 20.0;
  double rtol = 1e-8;
  std::size_t trials = 8;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format;
  std::optional<double> permanence_delta;
  std::size_t samples = 10000;
  std::string random_spec;
  std::size_t count = 10;
};

// Error carrying an exit code, raised by the loaders below.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kParseError, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Loaded {
  ReactionNetwork net;
  Kinetics kin;
  std::string name;
};

Loaded load(const std::string& path) {
  const auto text = read_file(path);
  NetworkDocument doc;
  try {
    doc = parse(text);
  } catch (const ParseError& e) {
    throw Exit{kParseError, e.format(path)};
  }
  try {
    auto [net, kin] = lower(doc);
    return {std::move(net), std::move(kin), doc.name.empty() ? fs::path(path).stem().string() : doc.name};
  } catch (const ValidationError& e) {
    std::string msg = path + ": invalid network";
    for (const auto& v : e.violations()) msg += "\n  " + v.message;
    throw Exit{kValidationError, msg};
  } catch (const std::invalid_argument& e) {
    throw Exit{kValidationError, path + ": " + e.what()};
  }
}

State parse_x0(const std::string& text, std::size_t n) {
  State x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      x.push_back(v);
    } catch (const std::exception&) {
      throw Exit{kValidationError, "--x0: cannot parse '" + item + "'"};
    }
  }
  if (x.size() != n) {
    throw Exit{kValidationError, "--x0 has " + std::to_string(x.size()) + " components, network has " +
                                     std::to_string(n) + " species"};
  }
  for (double v : x) {
    if (!(v > 0) || !std::isfinite(v)) throw Exit{kValidationError, "--x0 must be strictly positive"};
  }
  return x;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Exit{kParseError, "cannot write " + path.string()};
  f << content;
}

std::string vector_text(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string sign_class(const RationalVector& w) {
  bool pos = false, neg = false, zero = false;
  for (const auto& q : w) {
    pos = pos || q > 0;
    neg = neg || q < 0;
    zero = zero || q == 0;
  }
  if (pos && neg) return "mixed";
  if (pos) return zero ? "non-negative" : "positive";
  return zero ? "non-positive" : "negative";
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto l = load(cfg.input);
  const auto& net = l.net;
  const auto lc = linkage_classes(net);
  const auto wr = is_weakly_reversible(net);
  const bool rev = is_reversible(net);
  const auto sb = stoichiometric_basis(net);
  const auto laws = orthogonal_complement(sb.reaction_vectors, net.num_species());
  std::vector<RationalVector> rv;
  for (const auto& v : sb.reaction_vectors) rv.push_back(to_rational(v));
  const auto stiemke_cert = stiemke(rv);
  const auto flags = check_hypotheses(net, l.kin);
  const long deficiency = static_cast<long>(net.num_complexes()) - static_cast<long>(lc.classes.size()) -
                          static_cast<long>(sb.dimension);

  if (cfg.format == "json") {
    Json j;
    j["schema"] = "crn-bound/analysis/v1";
    j["network"] = l.name;
    Json species = Json::array();
    for (const auto& s : net.species()) species.push_back(s.name);
    j["species"] = species;
    Json complexes = Json::array();
    for (const auto& y : net.complexes()) complexes.push_back(render_complex(net, y));
    j["complexes"] = complexes;
    j["num_reactions"] = net.num_reactions();
    j["linkage_classes"] = lc.classes;
    j["weakly_reversible"] = wr.weakly_reversible;
    j["reversible"] = rev;
    j["stoichiometric_dimension"] = sb.dimension;
    j["deficiency"] = deficiency;
    Json cons = Json::array();
    for (const auto& w : laws) cons.push_back(Json{{"w", rational_vector_json(w)}, {"signs", sign_class(w)}});
    j["conservation_relations"] = cons;
    j["positive_conservation"] = certificate_json(stiemke_cert);
    j["hypotheses"] = Json{{"weakly_reversible", flags.weakly_reversible},
                           {"single_linkage_class", flags.single_linkage_class},
                           {"kinetics_bounded", flags.kinetics_bounded}};
    out << dump(j);
    return kOk;
  }

  out << "network: " << l.name << "\n";
  out << "species: " << net.num_species() << " (";
  for (std::size_t i = 0; i < net.num_species(); ++i) out << (i ? ", " : "") << net.species()[i].name;
  out << ")\n";
  out << "complexes: " << net.num_complexes() << "\n";
  out << "reactions: " << net.num_reactions() << "\n";
  out << "linkage classes: " << lc.classes.size() << "\n";
  for (std::size_t c = 0; c < lc.classes.size(); ++c) {
    out << "  L" << c + 1 << ":";
    for (auto i : lc.classes[c]) out << " [" << render_complex(net, net.complex(i)) << "]";
    out << "\n";
  }
  out << "weakly reversible: " << (wr.weakly_reversible ? "yes" : "no");
  if (wr.witness) {
    out << " (no path " << render_complex(net, net.complex(wr.witness->first)) << " => "
        << render_complex(net, net.complex(wr.witness->second)) << ")";
  }
  out << "\n";
  out << "reversible: " << (rev ? "yes" : "no") << "\n";
  out << "stoichiometric dimension: " << sb.dimension << "\n";
  out << "deficiency: " << deficiency << "\n";
  out << "conservation relations: " << laws.size() << "\n";
  for (const auto& w : laws) out << "  " << vector_text(w) << " " << sign_class(w) << "\n";
  if (const auto* o = std::get_if<OrthogonalCert>(&stiemke_cert)) {
    out << "positive conservation: yes " << vector_text(o->w) << " (every class is bounded)\n";
  } else {
    out << "positive conservation: no, combination " << vector_text(std::get<CombinationCert>(stiemke_cert).c)
        << " of reaction vectors is <= 0 with a strict coordinate\n";
  }
  out << std::boolalpha << "hypotheses: weakly_reversible=" << flags.weakly_reversible
      << " single_linkage_class=" << flags.single_linkage_class << " kinetics_bounded=" << flags.kinetics_bounded
      << "\n";
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto l = load(cfg.input);
  if (cfg.x0.empty()) throw Exit{kValidationError, "--x0 is required"};
  const auto x0 = parse_x0(cfg.x0, l.net.num_species());
  IntegratorOptions opts;
  opts.rtol = cfg.rtol;
  Trajectory traj;
  try {
    traj = integrate(l.net, l.kin, x0, cfg.t_end, opts);
  } catch (const IntegrationError& e) {
    throw Exit{kIntegrationFailure, std::string("integration failed: ") + e.what()};
  }
  std::vector<std::string> names;
  for (const auto& s : l.net.species()) names.push_back(s.name);
  const bool csv = cfg.format.empty() || cfg.format == "csv";
  const bool json = cfg.format.empty() || cfg.format == "json";
  if (!cfg.out.empty()) {
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    if (csv) write_file(dir / "trajectory.csv", trajectory_csv(traj));
    if (json) write_file(dir / "summary.json", trajectory_summary_json(traj, names));
  } else if (cfg.format == "json") {
    out << trajectory_summary_json(traj, names);
  } else {
    out << trajectory_csv(traj);
  }
  return kOk;
}

int exit_for(Conclusion c) {
  switch (c) {
    case Conclusion::CertifiedEmpiricallyBounded:
      return kOk;
    case Conclusion::HypothesesFail:
      return kHypothesesFail;
    case Conclusion::DescentViolationFound:
      return kDescentViolation;
    case Conclusion::Inconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

void emit(const RunConfig& cfg, const std::string& text, const char* filename, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  fs::path p(cfg.out);
  if (fs::is_directory(p) || p.extension().empty()) p /= filename;
  write_file(p, text);
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const auto l = load(cfg.input);
  TrialSpec spec;
  spec.trials = cfg.trials;
  spec.seed = cfg.seed;
  spec.horizon = cfg.t_end;
  spec.samples_per_shell = cfg.samples;
  spec.integrator.rtol = cfg.rtol;
  auto report = certify_boundedness(l.net, l.kin, spec);
  report.network_name = l.name;
  auto j = report_json(report);
  if (cfg.permanence_delta) {
    PermanenceSpec ps;
    if (!cfg.x0.empty()) ps.x_ref = parse_x0(cfg.x0, l.net.num_species());
    ps.trials = cfg.trials;
    ps.horizon = cfg.t_end;
    ps.seed = cfg.seed;
    ps.samples_per_shell = cfg.samples;
    ps.integrator.rtol = cfg.rtol;
    try {
      j["permanence"] = permanence_json(check_permanence(l.net, l.kin, *cfg.permanence_delta, ps));
    } catch (const CertifierError& e) {
      throw Exit{kValidationError, std::string("--permanence-delta: ") + e.what()};
    }
  }
  emit(cfg, dump(j), "report.json", out);
  return exit_for(report.conclusion);
}

int cmd_campaign(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CampaignSpec spec;
  try {
    const std::string text = cfg.random_spec.empty() || cfg.random_spec.front() == '{' ? cfg.random_spec
                                                                                       : read_file(cfg.random_spec);
    if (!text.empty()) spec = parse_campaign_spec(text);
  } catch (const std::invalid_argument& e) {
    throw Exit{kParseError, e.what()};
  }
  TrialSpec trials;
  trials.trials = cfg.trials;
  trials.horizon = cfg.t_end;
  trials.samples_per_shell = cfg.samples;
  trials.integrator.rtol = cfg.rtol;
  CampaignResult result;
  try {
    result = run_campaign(spec, cfg.count, cfg.seed, trials);
  } catch (const SpecInfeasible& e) {
    throw Exit{kParseError, std::string("random spec: ") + e.what()};
  }
  const auto j = campaign_json(result);
  emit(cfg, dump(j), "campaign.json", out);
  const auto& agg = j["aggregate"];
  err << "networks " << agg["networks"] << ", hypotheses certified " << agg["hypotheses_certified"]
      << ", bounded trials " << agg["bounded_trials"] << "/" << agg["total_trials"] << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural analysis, simulation and boundedness certification for reaction networks", "crn-bound"};
  app.require_subcommand(1);
  RunConfig cfg;
  double delta = 0;
  double sim_t_end = 20.0, cert_t_end = 50.0, camp_t_end = 50.0;

  auto* analyze = app.add_subcommand("analyze", "structural report for a .crn file");
  analyze->add_option("file", cfg.input, "network file")->required();
  analyze->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand("simulate", "integrate the mass-action system");
  simulate->add_option("file", cfg.input, "network file")->required();
  simulate->add_option("--x0", cfg.x0, "initial state \"a,b,c\"")->required();
  simulate->add_option("--t-end", sim_t_end, "horizon")->check(CLI::PositiveNumber);
  simulate->add_option("--rtol", cfg.rtol, "relative tolerance")->check(CLI::PositiveNumber);
  simulate->add_option("--out", cfg.out, "output directory");
  simulate->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* certify = app.add_subcommand("certify", "hypotheses, descent threshold and simulation evidence");
  certify->add_option("file", cfg.input, "network file")->required();
  certify->add_option("--trials", cfg.trials, "number of simulated trials")->check(CLI::PositiveNumber);
  certify->add_option("--seed", cfg.seed, "random seed");
  certify->add_option("--t-end", cert_t_end, "horizon")->check(CLI::PositiveNumber);
  certify->add_option("--rtol", cfg.rtol, "relative tolerance")->check(CLI::PositiveNumber);
  certify->add_option("--samples", cfg.samples, "samples per threshold shell")->check(CLI::PositiveNumber);
  auto* delta_opt = certify->add_option("--permanence-delta", delta, "boundary margin for the permanence check");
  certify->add_option("--x0", cfg.x0, "class representative for the permanence check");
  certify->add_option("--out", cfg.out, "output file or directory");
  certify->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"json"}));

  auto* campaign = app.add_subcommand("campaign", "certify a family of random networks");
  campaign->add_option("--random-spec", cfg.random_spec, "JSON spec or path to one");
  campaign->add_option("--count", cfg.count, "number of networks");
  campaign->add_option("--seed", cfg.seed, "random seed");
  campaign->add_option("--trials", cfg.trials, "trials per network")->check(CLI::PositiveNumber);
  campaign->add_option("--t-end", camp_t_end, "horizon")->check(CLI::PositiveNumber);
  campaign->add_option("--rtol", cfg.rtol, "relative tolerance")->check(CLI::PositiveNumber);
  campaign->add_option("--samples", cfg.samples, "samples per threshold shell")->check(CLI::PositiveNumber);
  campaign->add_option("--out", cfg.out, "output file or directory");
  campaign->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "crn-bound: " << e.what() << "\n";
    return kParseError;
  }
  if (delta_opt->count() > 0) cfg.permanence_delta = delta;
  cfg.t_end = simulate->parsed() ? sim_t_end : certify->parsed() ? cert_t_end : camp_t_end;

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (certify->parsed()) return cmd_certify(cfg, out);
    return cmd_campaign(cfg, out, err);
  } catch (const Exit& e) {
    err << "crn-bound: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    err << "crn-bound: " << e.what() << "\n";
    return kValidationError;
  }
}

}  // namespace crn::cli
