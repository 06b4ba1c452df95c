// bmoa: command-line front end for the weighted BMOA/VMOA toolkit.
//
// Subcommands:
//   admissible  --weight W                    certify A1/A2/A3 + almost-increasing
//   seminorm    --weight W --f S [--route r]  Garsia / Carleson / arc routes
//   alphabeta   --weight W --psi S --phi S    alpha/beta rows + threshold limsups
//   bounded     --weight W --psi S --phi S    boundedness verdict
//   compact     --weight W --psi S --phi S    compactness verdict
//   examples    [--which NAME]                packaged reproduction suite
//   plotdata    --weight W --psi S --phi S --f S   grid CSV for external plots
//
// Exit codes: admissible/bounded/compact answer 0 = yes, 2 = no,
// 3 = inconclusive; usage or evaluation errors exit 1.
//
// A run is fully determined by its resolved configuration, which every
// report embeds; identical configurations produce byte-identical output.

#include <fstream>
#include <iostream>

#include "bmoa/parse.hpp"
#include "bmoa/report.hpp"

namespace {

using namespace bmoa;

struct RunConfig {
  std::string command;
  std::string weight_text;
  std::string psi_text;
  std::string phi_text;
  std::string f_text;
  std::string route = "garsia";
  std::string which = "all";
  int nodes = 1024;
  int max_k = 30;
  double tol = 1e-6;
  int grid_levels = 24;
  int grid_angles = 64;
  int p = 2;
  std::string format = "table";
  std::string out_path;
  long seed = 1;
  double eps0 = 0.0;  // 0 = weight default
};

int usage() {
  std::cerr <<
      "usage: bmoa <command> [flags]\n"
      "commands: admissible seminorm alphabeta bounded compact examples plotdata\n"
      "flags: --weight T --psi T --phi T --f T --route garsia|carleson|arc|all\n"
      "       --which NAME --p 1|2 --nodes N --max-k K --tol X --grid-levels J\n"
      "       --grid-angles N --format table|csv|json --out PATH --seed N\n"
      "       --eps0 X --config FILE\n";
  return 1;
}

void apply_kv(RunConfig& rc, const std::string& key, const std::string& val) {
  if (key == "weight") rc.weight_text = val;
  else if (key == "psi") rc.psi_text = val;
  else if (key == "phi") rc.phi_text = val;
  else if (key == "f") rc.f_text = val;
  else if (key == "route") rc.route = val;
  else if (key == "which") rc.which = val;
  else if (key == "p") rc.p = std::stoi(val);
  else if (key == "nodes") rc.nodes = std::stoi(val);
  else if (key == "max-k" || key == "max_k") rc.max_k = std::stoi(val);
  else if (key == "tol") rc.tol = std::stod(val);
  else if (key == "grid-levels" || key == "grid_levels") rc.grid_levels = std::stoi(val);
  else if (key == "grid-angles" || key == "grid_angles") rc.grid_angles = std::stoi(val);
  else if (key == "format") rc.format = val;
  else if (key == "out") rc.out_path = val;
  else if (key == "seed") rc.seed = std::stol(val);
  else if (key == "eps0") rc.eps0 = std::stod(val);
  else throw InvalidSymbol("unknown option: " + key);
}

void load_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSymbol("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section headers are cosmetic
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidSymbol("config line without '=': " + line);
    apply_kv(rc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

ConfigEcho make_echo(const RunConfig& rc) {
  ConfigEcho e;
  e.emplace_back("command", rc.command);
  if (!rc.weight_text.empty()) e.emplace_back("weight", rc.weight_text);
  if (!rc.psi_text.empty()) e.emplace_back("psi", rc.psi_text);
  if (!rc.phi_text.empty()) e.emplace_back("phi", rc.phi_text);
  if (!rc.f_text.empty()) e.emplace_back("f", rc.f_text);
  if (rc.command == "seminorm") e.emplace_back("route", rc.route);
  if (rc.command == "examples") e.emplace_back("which", rc.which);
  e.emplace_back("p", std::to_string(rc.p));
  e.emplace_back("nodes", std::to_string(rc.nodes));
  e.emplace_back("max_k", std::to_string(rc.max_k));
  e.emplace_back("tol", fmt12(rc.tol));
  e.emplace_back("grid_levels", std::to_string(rc.grid_levels));
  e.emplace_back("grid_angles", std::to_string(rc.grid_angles));
  e.emplace_back("seed", std::to_string(rc.seed));
  if (rc.eps0 > 0.0) e.emplace_back("eps0", fmt12(rc.eps0));
  return e;
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.out_path.empty() || rc.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + rc.out_path);
  out << text;
}

QuadConfig quad_of(const RunConfig& rc) {
  QuadConfig q;
  q.nodes = rc.nodes;
  q.max_k = rc.max_k;
  q.tol = rc.tol;
  q.validate();  // reject invalid configs before any computation
  return q;
}

int cmd_admissible(const RunConfig& rc) {
  if (rc.weight_text.empty()) return usage();
  WeightPtr w = parse_weight(rc.weight_text, rc.eps0);
  const AdmissibilityReport rep = admissibility_report(*w);
  const ConfigEcho echo = make_echo(rc);
  if (rc.format == "json")
    emit(rc, to_json(rep, echo).dump(2) + "\n");
  else if (rc.format == "csv") {
    std::string out = comment_header(echo);
    out += csv_row({"condition", "estimate", "trend", "witness-1", "witness-2"});
    for (const auto& r : rep.records)
      out += csv_row({r.name, fmt12(r.estimate), to_string(r.trend), fmt12(r.witness[0]),
                      fmt12(r.witness[1])});
    out += csv_row({"verdict", to_string(rep.verdict), "", "", ""});
    emit(rc, out);
  } else
    emit(rc, to_table(rep, echo));
  switch (rep.verdict) {
    case AdmissibilityVerdict::Admissible: return 0;
    case AdmissibilityVerdict::NotAdmissible: return 2;
    default: return 3;
  }
}

int cmd_seminorm(const RunConfig& rc) {
  if (rc.weight_text.empty() || rc.f_text.empty()) return usage();
  if (rc.p != 1 && rc.p != 2) throw InvalidSymbol("--p must be 1 or 2");
  WeightPtr w = parse_weight(rc.weight_text, rc.eps0);
  const AnalyticMap f = parse_symbol(rc.f_text);
  const DiskGrid grid = DiskGrid::dyadic(rc.grid_levels, rc.grid_angles);
  const QuadConfig cfg = quad_of(rc);
  const ConfigEcho echo = make_echo(rc);

  std::vector<std::pair<std::string, SeminormProfile>> profs;
  if (rc.route == "garsia" || rc.route == "all")
    profs.emplace_back("garsia", seminorm(f, *w, rc.p, grid, cfg));
  if (rc.route == "carleson" || rc.route == "all")
    profs.emplace_back("carleson", carleson_seminorm(f, *w, grid, cfg));
  if (rc.route == "arc" || rc.route == "all")
    profs.emplace_back("arc", arc_seminorm(f, *w, rc.p, cfg));
  if (profs.empty()) throw InvalidSymbol("unknown route: " + rc.route);

  if (rc.format == "json") {
    ojson j = ojson::object();
    j["config"] = echo_json(echo);
    for (auto& [name, p] : profs) j[name] = to_json(p, {});
    emit(rc, j.dump(2) + "\n");
  } else if (rc.format == "csv") {
    std::string out = comment_header(echo);
    out += csv_row({"route", "level", "radius", "max", "witness-angle"});
    for (auto& [name, p] : profs)
      for (const auto& l : p.levels)
        out += csv_row({name, std::to_string(l.level), fmt12(l.rho), fmt12(l.max_value),
                        fmt12(l.witness_angle)});
    emit(rc, out);
  } else {
    std::string out;
    for (auto& [name, p] : profs) out += to_table(p, out.empty() ? echo : ConfigEcho{}, name);
    emit(rc, out);
  }
  return 0;
}

int cmd_alphabeta(const RunConfig& rc) {
  if (rc.weight_text.empty() || rc.psi_text.empty() || rc.phi_text.empty()) return usage();
  WeightPtr w = parse_weight(rc.weight_text, rc.eps0);
  const SymbolPair pair = make_symbol_pair(parse_symbol(rc.psi_text), parse_symbol(rc.phi_text));
  const DiskGrid grid = DiskGrid::dyadic(rc.grid_levels, rc.grid_angles);
  const AlphaBetaProfile prof = alpha_beta_profile(pair, *w, grid, quad_of(rc));
  const ConfigEcho echo = make_echo(rc);
  if (rc.format == "json")
    emit(rc, to_json(prof, echo).dump(2) + "\n");
  else if (rc.format == "csv")
    emit(rc, to_csv(prof, echo));
  else {
    std::ostringstream os;
    os << comment_header(echo);
    os << "sup_alpha = " << fmt12(prof.sup_alpha) << " at " << fmt12(prof.witness_alpha) << "\n";
    os << "sup_beta  = " << fmt12(prof.sup_beta) << " at " << fmt12(prof.witness_beta) << "\n";
    for (std::size_t i = 0; i < prof.thresholds.size(); ++i) {
      os << "limsup(alpha+beta | |phi(a)| > " << fmt12(prof.thresholds[i]) << ") = ";
      if (prof.limsup_sum[i] < 0)
        os << "(empty level set)";
      else
        os << fmt12(prof.limsup_sum[i]);
      os << "\n";
    }
    emit(rc, os.str());
  }
  return 0;
}

int verdict_exit(const Verdict& v, bool compact_mode) {
  if (compact_mode) {
    if (v.kind == VerdictKind::Compact) return 0;
    if (v.kind == VerdictKind::NoncompactEvidence) return 2;
    return 3;
  }
  if (v.kind == VerdictKind::Bounded) return 0;
  if (v.kind == VerdictKind::UnboundedEvidence) return 2;
  return 3;
}

int cmd_verdict(const RunConfig& rc, bool compact_mode) {
  if (rc.weight_text.empty() || rc.psi_text.empty() || rc.phi_text.empty()) return usage();
  WeightPtr w = parse_weight(rc.weight_text, rc.eps0);
  const SymbolPair pair = make_symbol_pair(parse_symbol(rc.psi_text), parse_symbol(rc.phi_text));
  const DiskGrid grid = DiskGrid::dyadic(rc.grid_levels, rc.grid_angles);
  const QuadConfig cfg = quad_of(rc);
  const Verdict v = compact_mode ? compactness_verdict(pair, *w, grid, cfg)
                                 : boundedness_verdict(pair, *w, grid, cfg);
  const ConfigEcho echo = make_echo(rc);
  if (rc.format == "json")
    emit(rc, to_json(v, echo).dump(2) + "\n");
  else
    emit(rc, to_table(v, echo, rc.command));
  return verdict_exit(v, compact_mode);
}

struct ExampleOutcome {
  std::string name;
  std::string expectation;
  std::string got;
  bool pass = false;
};

// The packaged reproduction suite: symbol pairs whose boundedness and
// compactness verdicts are known in closed form.
std::vector<ExampleOutcome> run_examples(const RunConfig& rc, const std::string& which) {
  const QuadConfig cfg = quad_of(rc);
  const DiskGrid grid = DiskGrid::dyadic(std::min(rc.grid_levels, 24), 16);
  std::vector<ExampleOutcome> out;
  auto check = [&](const std::string& name, const std::string& weight_text,
                   const std::string& psi_text, const std::string& phi_text,
                   VerdictKind want_bounded, VerdictKind want_compact, bool run_compact) {
    if (which != "all" && which != name) return;
    WeightPtr w = parse_weight(weight_text);
    const SymbolPair pair = make_symbol_pair(parse_symbol(psi_text), parse_symbol(phi_text));
    ExampleOutcome e;
    e.name = name;
    const Verdict b = boundedness_verdict(pair, *w, grid, cfg);
    std::string got = std::string("bounded: ") + to_string(b.kind);
    std::string want = std::string("bounded: ") + to_string(want_bounded);
    bool pass = b.kind == want_bounded;
    if (run_compact && b.kind == VerdictKind::Bounded) {
      const Verdict c = compactness_verdict(pair, *w, grid, cfg);
      got += std::string(", compact: ") + to_string(c.kind);
      want += std::string(", compact: ") + to_string(want_compact);
      pass = pass && c.kind == want_compact;
    }
    e.expectation = want;
    e.got = got;
    e.pass = pass;
    out.push_back(e);
  };

  check("halfmap", "log 1", "const 1", "halfmap", VerdictKind::Bounded,
        VerdictKind::NoncompactEvidence, true);
  check("product-compact", "log 1", "poly 1 -1", "halfmap", VerdictKind::Bounded,
        VerdictKind::Compact, true);
  check("multiplier", "power 0.25", "poly 1 0.5", "identity", VerdictKind::Bounded,
        VerdictKind::NoncompactEvidence, true);
  check("blaschke", "log 1",
        "const 1",
        "blaschke [0.5, 0.75, 0.875, 0.9375, 0.96875, 0.984375, 0.9921875, 0.99609375, "
        "0.998046875, 0.9990234375, 0.99951171875, 0.999755859375]",
        VerdictKind::UnboundedEvidence, VerdictKind::Inconclusive, false);
  return out;
}

int cmd_examples(const RunConfig& rc) {
  const auto results = run_examples(rc, rc.which);
  if (results.empty()) {
    std::cerr << "unknown example: " << rc.which << "\n";
    return 1;
  }
  const ConfigEcho echo = make_echo(rc);
  std::ostringstream os;
  os << comment_header(echo);
  bool all = true;
  for (const auto& e : results) {
    os << (e.pass ? "PASS" : "FAIL") << "  " << e.name << "  expected {" << e.expectation
       << "}  got {" << e.got << "}\n";
    all = all && e.pass;
  }
  emit(rc, os.str());
  return all ? 0 : 2;
}

int cmd_plotdata(const RunConfig& rc) {
  if (rc.weight_text.empty() || rc.psi_text.empty() || rc.phi_text.empty() || rc.f_text.empty())
    return usage();
  WeightPtr w = parse_weight(rc.weight_text, rc.eps0);
  const SymbolPair pair = make_symbol_pair(parse_symbol(rc.psi_text), parse_symbol(rc.phi_text));
  const AnalyticMap f = parse_symbol(rc.f_text);
  const DiskGrid grid = DiskGrid::dyadic(rc.grid_levels, rc.grid_angles);
  const QuadConfig cfg = quad_of(rc);

  struct Row {
    cplx a;
    double alpha = 0, beta = 0, vg = 0;
    bool ok = true;
  };
  std::vector<Row> rows(grid.pts.size());
  parallel_for(grid.pts.size(), [&](std::size_t i) {
    Row& r = rows[i];
    r.a = grid.pts[i].a;
    try {
      r.alpha = alpha(pair, *w, r.a, cfg);
      r.beta = beta(pair, *w, r.a, cfg);
      r.vg = w->v(r.a) * gamma_boundary(f, r.a, 2.0, cfg).value;
    } catch (const Error&) {
      r.ok = false;
    }
  });
  std::string out = comment_header(make_echo(rc));
  out += csv_row({"re-a", "im-a", "alpha", "beta", "v-gamma-f"});
  for (const auto& r : rows) {
    if (!r.ok) continue;
    out += csv_row({fmt12(std::real(r.a)), fmt12(std::imag(r.a)), fmt12(r.alpha), fmt12(r.beta),
                    fmt12(r.vg)});
  }
  emit(rc, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  RunConfig rc;
  rc.command = argv[1];
  try {
    for (int i = 2; i < argc; ++i) {
      std::string flag = argv[i];
      if (flag.rfind("--", 0) != 0) return usage();
      flag = flag.substr(2);
      if (i + 1 >= argc) return usage();
      const std::string val = argv[++i];
      if (flag == "config")
        load_config_file(rc, val);
      else
        apply_kv(rc, flag, val);
    }
    if (rc.command == "admissible") return cmd_admissible(rc);
    if (rc.command == "seminorm") return cmd_seminorm(rc);
    if (rc.command == "alphabeta") return cmd_alphabeta(rc);
    if (rc.command == "bounded") return cmd_verdict(rc, false);
    if (rc.command == "compact") return cmd_verdict(rc, true);
    if (rc.command == "examples") return cmd_examples(rc);
    if (rc.command == "plotdata") return cmd_plotdata(rc);
    return usage();
  } catch (const std::exception& e) {
    std::cerr << "bmoa: " << e.what() << "\n";
    return 1;
  }
}
