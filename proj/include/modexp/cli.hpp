#pragma once

// Command-line front end. Kept in a header so the tests can drive it with
// string streams; tools/modexp.cpp only forwards main().
//
// Needs CLI11.hpp and json.hpp on the include path.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "modexp/bounds.hpp"
#include "modexp/constructions.hpp"
#include "modexp/decomposition.hpp"
#include "modexp/expansion.hpp"
#include "modexp/io.hpp"
#include "modexp/modularity.hpp"
#include "modexp/spectral.hpp"
#include "modexp/verify.hpp"

namespace modexp::cli {

enum exit_code : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_bad_input = 2,
  exit_size_cap = 3,
  exit_isolated = 4,
  exit_hypothesis = 5,
};

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::size_limit_exceeded: return exit_size_cap;
    case Errc::isolated_vertices_present:
    case Errc::zero_volume_side:
    case Errc::zero_degree_vertex: return exit_isolated;
    case Errc::hypothesis_violated: return exit_hypothesis;
    case Errc::postcondition_failed: return exit_verify_failed;
    default: return exit_bad_input;
  }
}

struct RunConfig {
  std::string input;   // empty or "-" reads stdin
  std::string output;  // empty or "-" writes stdout
  std::string format = "text";
  int max_n = 0;       // 0 keeps the library defaults
  std::uint64_t seed = 1;
  int samples = 50;

  Limits limits() const {
    Limits l;
    if (max_n > 0) l.max_subset_vertices = l.max_component_vertices = max_n;
    return l;
  }
};

// Collects records and renders them either as text lines or as one JSON
// object per line carrying the same fields.
class Report {
 public:
  explicit Report(bool json) : json_(json) {}

  void record(const std::string& text, nlohmann::ordered_json fields) {
    if (json_) {
      out_ << fields.dump() << '\n';
    } else {
      out_ << text << '\n';
    }
  }

  // Human-readable lines that have no JSON counterpart.
  void note(const std::string& text) {
    if (!json_) out_ << text << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  bool json_;
  std::ostringstream out_;
};

namespace detail {

inline nlohmann::ordered_json partition_json(const Partition& p) {
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const VertexSet& s : p.parts()) parts.push_back(s.members());
  return parts;
}

inline std::string read_all(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Partition parse_labels(const std::string& text, int n) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<int> labels;
  std::string token;
  while (in >> token) {
    Ratio r = Ratio::parse(token);
    if (!r.is_integer() || r.sign() < 0) throw Error(Errc::partition_mismatch, "bad part label " + token);
    labels.push_back(static_cast<int>(r.num()));
  }
  if (static_cast<int>(labels.size()) != n) {
    throw Error(Errc::partition_mismatch, "partition has " + std::to_string(labels.size()) + " labels for " +
                                              std::to_string(n) + " vertices");
  }
  return Partition::from_labels(labels);
}

inline std::string decimal(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

}  // namespace detail

struct ComputeOptions {
  std::vector<std::string> what{"q"};
  std::string partition;
  bool decimals = false;
};

inline void cmd_compute(const Graph& g, const ComputeOptions& opt, const RunConfig& cfg, Report& rep) {
  const Limits limits = cfg.limits();
  auto exact = [&](const std::string& name, const std::string& value, double approx) {
    std::string text = name + " = " + value;
    if (opt.decimals && value != "inf") text += " (" + detail::decimal(approx) + ")";
    return text;
  };
  for (const std::string& w : opt.what) {
    if (w == "q") {
      ModularityReport r = maximize(g, limits);
      rep.record(exact("q*", r.q_star.str(), r.q_star.to_double()),
                 {{"quantity", "q*"}, {"value", r.q_star.str()}, {"partition", detail::partition_json(r.optimal)}});
      rep.note("partition " + r.optimal.str());
    } else if (w == "score") {
      if (opt.partition.empty()) throw Error(Errc::partition_mismatch, "--what score needs --partition");
      Partition p = detail::parse_labels(opt.partition, g.n());
      ScoreBreakdown s = score(g, p);
      rep.record(exact("q", s.q.str(), s.q.to_double()) + "\n" + exact("qE", s.coverage.str(), s.coverage.to_double()) +
                     "\n" + exact("qD", s.degree_tax.str(), s.degree_tax.to_double()),
                 {{"quantity", "score"}, {"q", s.q.str()}, {"qE", s.coverage.str()}, {"qD", s.degree_tax.str()}});
    } else if (w == "h" || w == "hh" || w == "hprime") {
      ExpansionReport r = w == "h" ? conductance(g, limits) : w == "hh" ? expansion_by_products(g, limits)
                                                                        : expansion_by_edges(g, limits);
      double approx = r.value.infinite ? 0.0 : r.value.finite.to_double();
      rep.record(exact(w, r.value.str(), approx) + "\nwitness " + r.witness.str(),
                 {{"quantity", w}, {"value", r.value.str()}, {"witness", r.witness.members()}});
    } else if (w == "gap") {
      SpectralReport r = spectral_gap(g);
      std::string eig;
      nlohmann::ordered_json list = nlohmann::ordered_json::array();
      for (double x : r.eigenvalues) {
        eig += (eig.empty() ? "" : " ") + detail::decimal(x);
        list.push_back(x);
      }
      rep.record("gap = " + detail::decimal(r.gap) + "\neigenvalues " + eig,
                 {{"quantity", "gap"}, {"value", r.gap}, {"eigenvalues", list}});
    } else {
      throw Error(Errc::out_of_range, "unknown quantity " + w + " (q, score, h, hh, hprime, gap)");
    }
  }
}

inline std::string cmd_generate(const FamilySpec& spec) { return serialize_graph(generate(spec)); }

struct VerdictOptions {
  int component_of = -1;
  bool all_components = false;
};

inline void cmd_verdict(const Graph& g, const VerdictOptions& opt, const RunConfig& cfg, Report& rep) {
  if (g.has_isolated_vertex()) {
    throw Error(Errc::isolated_vertices_present, "verdicts need a graph without isolated vertices");
  }
  std::vector<VertexSet> comps = components(g);
  if (!opt.all_components && opt.component_of < 0) {
    throw Error(Errc::out_of_range, "choose --component-of <vertex> or --all-components");
  }
  if (!opt.all_components && opt.component_of >= g.n()) {
    throw Error(Errc::vertex_out_of_range, "vertex " + std::to_string(opt.component_of) + " out of range");
  }
  for (std::size_t id = 0; id < comps.size(); ++id) {
    const VertexSet& c = comps[id];
    if (!opt.all_components && !c.contains(opt.component_of)) continue;
    SplitVerdict v = resolution_verdict(g, c, cfg.limits());
    bool classic = classic_resolution_bound(g, c);
    std::string text = "component " + std::to_string(id) + " alpha " + v.alpha.str() + " hh " + v.hh_component.str() +
                       " decision " + to_string(v.decision) + " classic " + (classic ? "true" : "false");
    nlohmann::ordered_json fields{{"component", id},
                                  {"vertices", c.members()},
                                  {"alpha", v.alpha.str()},
                                  {"hh", v.hh_component.str()},
                                  {"decision", to_string(v.decision)},
                                  {"classic", classic}};
    if (v.decision == SplitDecision::boundary) {
      text += "\nwitness_unsplit " + v.witness_unsplit->str() + "\nwitness_split " + v.witness_split->str();
      fields["witness_unsplit"] = detail::partition_json(*v.witness_unsplit);
      fields["witness_split"] = detail::partition_json(*v.witness_split);
    }
    rep.record(text, fields);
  }
}

struct DecomposeOptions {
  std::string mode = "edges";
  std::string e0, alpha, beta, delta;
};

inline void cmd_decompose(const Graph& g, const DecomposeOptions& opt, const RunConfig& cfg, Report& rep) {
  const Limits limits = cfg.limits();
  if (opt.delta.empty()) throw Error(Errc::out_of_range, "--delta is required");
  Ratio delta = Ratio::parse(opt.delta);
  auto summary = [&](const ScoreBreakdown& s, const Ratio& bound, const std::string& mode) {
    rep.record("q = " + s.q.str() + " bound = " + bound.str() + "\npostconditions pass",
               {{"mode", mode}, {"q", s.q.str()}, {"qE", s.coverage.str()}, {"qD", s.degree_tax.str()},
                {"bound", bound.str()}, {"postconditions", "pass"}});
  };
  if (opt.mode == "edges" && !opt.e0.empty()) {
    DecompositionTrace t = split_non_expander(g, Ratio::parse(opt.e0), delta, limits);
    nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
    for (const TraceRound& r : t.rounds) {
      rounds.push_back({{"extracted", r.extracted.members()}, {"boundary_added", r.boundary_added.str()},
                        {"running", r.running.str()}});
    }
    std::string text = format_trace(t, "e0");
    text.pop_back();
    rep.record(text + "\npostconditions pass",
               {{"mode", "edges"}, {"rounds", rounds}, {"final", detail::partition_json(t.final)},
                {"e0", t.threshold.str()}, {"delta", t.delta.str()}, {"delta_prime", t.delta_prime.str()},
                {"rho", t.rho.str()}, {"postconditions", "pass"}});
  } else if (opt.mode == "edges") {
    if (opt.alpha.empty()) throw Error(Errc::out_of_range, "mode edges needs --e0 or --alpha");
    BuildResult b = build_partition(g, Ratio::parse(opt.alpha), delta, limits);
    for (std::size_t j = 0; j < b.steps.size(); ++j) {
      const RefineResult& s = b.steps[j];
      rep.note("step " + std::to_string(j + 1) + " partition " + s.partition.str() + " boundary " +
               s.boundary_after.str() + " max_in " + s.max_in_after.str() + " max_out " + s.max_out_after.str());
    }
    rep.note("final " + b.partition.str());
    rep.note("params alpha " + opt.alpha + " delta " + delta.str() + " rho " + rho_of(delta).str() + " rounds " +
             std::to_string(b.rounds));
    summary(b.score, b.bound, "edges");
  } else if (opt.mode == "volume") {
    if (opt.beta.empty()) throw Error(Errc::out_of_range, "mode volume needs --beta");
    VolumeResult v = volume_decompose(g, Ratio::parse(opt.beta), delta, limits);
    std::string text = format_trace(v.trace, "beta");
    text.pop_back();
    rep.note(text);
    rep.note("deleted " + v.deleted.str());
    summary(v.score, v.bound, "volume");
  } else {
    throw Error(Errc::out_of_range, "unknown mode " + opt.mode + " (edges, volume)");
  }
}

inline bool cmd_verify(const std::string& suite, const RunConfig& cfg, Report& rep) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.samples = cfg.samples;
  vc.limits = cfg.limits();
  bool all_pass = true;
  for (const PropertyResult& r : run_suite(suite, vc)) {
    all_pass = all_pass && r.passed;
    std::string text = r.suite + " " + r.name + " " + (r.passed ? "pass" : "FAIL") + " cases " + std::to_string(r.cases);
    if (!r.passed) {
      text += "\n  reason " + r.detail;
      std::istringstream lines(r.counterexample);
      for (std::string line; std::getline(lines, line);) text += "\n  " + line;
    }
    rep.record(text, {{"suite", r.suite}, {"property", r.name}, {"passed", r.passed}, {"cases", r.cases},
                      {"detail", r.detail}, {"counterexample", r.counterexample}});
  }
  return all_pass;
}

// Full command line entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact modularity, expansion and decomposition tools for small graphs", "modexp"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("-i,--input", cfg.input, "graph file (default stdin)");
  app.add_option("-o,--output", cfg.output, "output file (default stdout)");
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-n", cfg.max_n, "enumeration cap on vertices (cut scans and per-component modularity)");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--samples", cfg.samples, "sample count for randomized suites");

  ComputeOptions compute_opt;
  CLI::App* compute = app.add_subcommand("compute", "print exact invariants of a graph");
  compute->add_option("--what", compute_opt.what, "q, score, h, hh, hprime, gap")->delimiter(',');
  compute->add_option("--partition", compute_opt.partition, "part label per vertex, for --what score");
  compute->add_flag("--decimals", compute_opt.decimals, "also print decimal approximations");

  FamilySpec spec;
  std::map<std::string, std::string> raw;
  CLI::App* gen = app.add_subcommand("generate", "write a graph family in edge-list format");
  gen->add_option("family", spec.family, "family name")->required();
  for (const char* key : {"k", "l", "m", "n", "t", "a", "b", "alpha", "count"}) {
    gen->add_option(std::string("--") + key, raw[key], std::string("family parameter ") + key);
  }

  VerdictOptions verdict_opt;
  CLI::App* verdict = app.add_subcommand("verdict", "decide whether optimal partitions split a component");
  verdict->add_option("--component-of", verdict_opt.component_of, "the component containing this vertex");
  verdict->add_flag("--all-components", verdict_opt.all_components, "every component");

  DecomposeOptions dec_opt;
  CLI::App* decompose = app.add_subcommand("decompose", "run the edge or volume decomposition");
  decompose->add_option("--mode", dec_opt.mode, "edges or volume");
  decompose->add_option("--e0", dec_opt.e0, "edge threshold for a single splitting pass");
  decompose->add_option("--alpha", dec_opt.alpha, "relative size for the k-round partition builder");
  decompose->add_option("--beta", dec_opt.beta, "relative volume for the volume process");
  decompose->add_option("--delta", dec_opt.delta, "expansion threshold");

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", suite, "bounds, zero-mod, constructions, decomposition, resolution, all")
      ->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_bad_input;
  }

  Report rep(cfg.format == "json");
  int code = exit_ok;
  std::string graph_text;
  auto load = [&]() {
    std::string text;
    if (cfg.input.empty() || cfg.input == "-") {
      text = detail::read_all(in);
    } else {
      std::ifstream file(cfg.input);
      if (!file) throw Error(Errc::syntax_error, "cannot open " + cfg.input);
      text = detail::read_all(file);
    }
    return parse_graph(text);
  };
  try {
    if (*compute) {
      cmd_compute(load(), compute_opt, cfg, rep);
    } else if (*gen) {
      for (const auto& [key, value] : raw) {
        if (!value.empty()) spec.params[key] = value;
      }
      graph_text = cmd_generate(spec);
    } else if (*verdict) {
      cmd_verdict(load(), verdict_opt, cfg, rep);
    } else if (*decompose) {
      cmd_decompose(load(), dec_opt, cfg, rep);
    } else if (*verify) {
      if (!cmd_verify(suite, cfg, rep)) code = exit_verify_failed;
    }
  } catch (const HypothesisViolated& e) {
    err << e.what() << '\n';
    rep.record("offending " + e.offending().str(), {{"error", "HypothesisViolated"}, {"offending", e.offending().members()}});
    code = exit_hypothesis;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  }

  std::string text = *gen ? graph_text : rep.str();
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    std::ofstream file(cfg.output);
    if (!file) {
      err << "cannot write " << cfg.output << '\n';
      return exit_bad_input;
    }
    file << text;
  }
  return code;
}

}  // namespace modexp::cli
