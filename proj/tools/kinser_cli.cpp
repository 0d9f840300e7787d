#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kinser/kinser.hpp"

using namespace kinser;

namespace {

constexpr int kExitInClass = 0;
constexpr int kExitCertificate = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Matroid load(const std::string& path) { return parse_matroid(read_file(path)); }

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(std::string("expected an integer for ") + what + ", got '" + s + "'");
  }
}

GroupTable group_by_name(const std::string& name) {
  if (name == "klein" || name == "Z2xZ2") return klein_four();
  if (name.size() > 1 && name[0] == 'Z') return cyclic_group(to_int(name.substr(1), "group order"));
  throw Error("unknown group '" + name + "' (use Zg or klein)");
}

Matroid build(const std::string& name, const std::vector<std::string>& p) {
  auto arg = [&](std::size_t i, const char* what) {
    if (i >= p.size()) throw Error("'" + name + "' needs parameter <" + what + ">");
    return to_int(p[i], what);
  };
  if (name == "uniform") return uniform(arg(0, "k"), arg(1, "m"));
  if (name == "fano") return fano_pair().first;
  if (name == "nonfano") return fano_pair().second;
  if (name == "fano-sum") {
    auto [a, b] = fano_pair();
    return direct_sum(a, b).matroid;
  }
  if (name == "kinser-base") return kinser_base(arg(0, "r"));
  if (name == "kinser") return kinser::kinser(arg(0, "r"));
  if (name == "kinser-relaxed") {
    std::optional<int> also;
    if (p.size() > 1) also = arg(1, "i");
    return kinser_relaxed(arg(0, "r"), also);
  }
  if (name == "vamos") return kinser_relaxed(4).relabeled("Vamos");
  if (name == "spike") return binary_spike(arg(0, "r"));
  if (name == "dowling") {
    if (p.size() < 2) throw Error("'dowling' needs parameters <group> <n>");
    return dowling(group_by_name(p[0]), arg(1, "n"));
  }
  throw Error("unknown matroid '" + name + "'");
}

/// A single set written like one entry of a family spec.
SubsetMask parse_set(const std::string& text, const Matroid& M) {
  const Family f = parse_family_spec(text, M);
  if (f.sets.size() != 1) throw Error("expected a single set, got '" + text + "'");
  return f.sets[0];
}

std::string format_map(const std::vector<int>& map) {
  std::string out = "# index map (old -> new):";
  for (std::size_t i = 0; i < map.size(); ++i) {
    out += " " + std::to_string(i) + "->" + (map[i] < 0 ? std::string("-") : std::to_string(map[i]));
  }
  return out + "\n";
}

std::string format_value(const InequalityValue& v) {
  std::string out;
  for (const Term& t : v.terms) {
    out += std::string(to_string(t.side)) + " " + to_string(t.kind) + " " + t.name() + " {" + format_mask(t.mask) +
           "} " + std::to_string(t.rank) + "\n";
  }
  out += "lhs " + std::to_string(v.lhs) + "\n";
  out += "rhs " + std::to_string(v.rhs) + "\n";
  out += std::string(v.satisfied() ? "satisfied" : "violated") + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact matroid computations for the Kinser inequalities"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;

  auto* cmd_build = app.add_subcommand("build", "construct a catalog matroid");
  std::string build_name;
  std::vector<std::string> build_params;
  cmd_build->add_option("name", build_name,
                        "uniform K M | fano | nonfano | fano-sum | kinser-base R | kinser R | "
                        "kinser-relaxed R [I] | vamos | spike R | dowling GROUP N")
      ->required();
  cmd_build->add_option("params", build_params, "constructor parameters");
  cmd_build->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* cmd_transform = app.add_subcommand("transform", "apply a matroid operation");
  std::string op;
  std::vector<std::string> op_args;
  cmd_transform->add_option("op", op, "delete E | contract E | minor DEL CON | dual | relax SET | tighten SET | "
                                      "truncate | sum FILE")
      ->required();
  cmd_transform->add_option("args", op_args, "operation arguments");
  cmd_transform->add_option("-i,--input", in_path, "input matroid file")->required();
  cmd_transform->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a Kinser inequality on a family");
  int n_eval = 0;
  std::string family_spec;
  std::string cert_path;
  cmd_eval->add_option("-n", n_eval, "inequality index (default: number of sets)");
  cmd_eval->add_option("--family", family_spec, "sets separated by ';', e.g. V1;V2;V3;V4 or 0,1;2;-;3+V1");
  cmd_eval->add_option("--certificate", cert_path, "verify a certificate file instead");
  cmd_eval->add_option("-i,--input", in_path, "matroid file")->required();

  auto* cmd_check = app.add_subcommand("check", "decide membership for inequality n");
  int n_check = 4;
  bool use_dual = false;
  std::string space = "flats";
  bool any_mode = false;
  bool no_symmetry = false;
  int width = 1;
  cmd_check->add_option("-n", n_check, "inequality index")->required();
  cmd_check->add_option("-i,--input", in_path, "matroid file")->required();
  cmd_check->add_flag("--dual", use_dual, "check the dual matroid");
  cmd_check->add_option("--space", space, "flats | all | independent")
      ->check(CLI::IsMember({"flats", "all", "independent"}));
  cmd_check->add_flag("--any", any_mode, "stop at the first violation instead of the least one");
  cmd_check->add_flag("--no-symmetry", no_symmetry, "disable symmetry pruning");
  cmd_check->add_option("-j,--jobs", width, "worker threads (0 = all cores)");
  cmd_check->add_option("-o,--output", out_path, "certificate file");

  auto* cmd_axioms = app.add_subcommand("axioms", "check axiom systems exhaustively");
  std::string system = "all";
  cmd_axioms->add_option("-i,--input", in_path, "matroid file")->required();
  cmd_axioms->add_option("--system", system, "rank | closure | circuits | independence | all")
      ->check(CLI::IsMember({"rank", "closure", "circuits", "independence", "all"}));

  auto* cmd_enum = app.add_subcommand("enumerate", "list sets of one kind");
  std::string kind = "flats";
  cmd_enum->add_option("--kind", kind, "flats | circuits | bases | hyperplanes | circuit-hyperplanes")
      ->check(CLI::IsMember({"flats", "circuits", "bases", "hyperplanes", "circuit-hyperplanes"}));
  cmd_enum->add_option("-i,--input", in_path, "matroid file")->required();

  auto* cmd_bench = app.add_subcommand("bench", "rank-query counts for inequality-4 checks of binary spikes");
  std::string range = "4..6";
  cmd_bench->add_option("--spike-range", range, "LO..HI, even ranks in the range are measured");
  cmd_bench->add_option("-j,--jobs", width, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_build) {
      emit(out_path, write_matroid(build(build_name, build_params)));
      return 0;
    }

    if (*cmd_transform) {
      const Matroid M = load(in_path);
      auto need = [&](std::size_t k) {
        if (op_args.size() < k) throw Error("'" + op + "' needs " + std::to_string(k) + " argument(s)");
      };
      std::string header;
      std::optional<Matroid> out;
      if (op == "delete" || op == "contract") {
        need(1);
        const int e = to_int(op_args[0], "element");
        Reindexed r = op == "delete" ? delete_element(M, e) : contract_element(M, e);
        header = format_map(r.index_map);
        out = std::move(r.matroid);
      } else if (op == "minor") {
        need(2);
        Reindexed r = minor(M, parse_set(op_args[0], M), parse_set(op_args[1], M));
        header = format_map(r.index_map);
        out = std::move(r.matroid);
      } else if (op == "dual") {
        out = dual(M);
      } else if (op == "relax") {
        need(1);
        out = relax(M, parse_set(op_args[0], M));
      } else if (op == "tighten") {
        need(1);
        out = tighten(M, parse_set(op_args[0], M));
      } else if (op == "truncate") {
        out = truncate(M);
      } else if (op == "sum") {
        need(1);
        DirectSum s = direct_sum(M, load(op_args[0]));
        out = std::move(s.matroid);
      } else {
        throw Error("unknown operation '" + op + "'");
      }
      emit(out_path, header + write_matroid(*out));
      return 0;
    }

    if (*cmd_eval) {
      const Matroid M = load(in_path);
      if (!cert_path.empty()) {
        const BadFamilyCertificate c = parse_certificate(read_file(cert_path));
        const InequalityValue v = verify_certificate(c, M);
        std::cout << format_value(v) << "certificate verified, margin " << v.margin() << "\n";
        return 0;
      }
      if (family_spec.empty()) throw Error("eval needs --family or --certificate");
      const Family f = parse_family_spec(family_spec, M);
      if (n_eval != 0 && n_eval != f.n) {
        throw Error("-n " + std::to_string(n_eval) + " but the family has " + std::to_string(f.n) + " sets");
      }
      std::cout << format_value(evaluate(M, f));
      return 0;
    }

    if (*cmd_check) {
      const Matroid M = load(in_path);
      SearchConfig cfg;
      cfg.space = space == "all" ? SearchSpace::all_subsets
                  : space == "independent" ? SearchSpace::independent
                                           : SearchSpace::flats;
      cfg.determinism = any_mode ? Determinism::any : Determinism::lex_first;
      cfg.symmetry_pruning = !no_symmetry;
      cfg.parallel_width = width;
      const Verdict v = use_dual ? dual_membership(M, n_check, cfg) : membership(M, n_check, cfg);
      if (v.in_class) {
        std::cout << "InClass n=" << v.n << " space=" << to_string(cfg.space) << " candidates=" << v.stats.candidates
                  << " tuples_examined=" << v.stats.tuples_examined << " rank_queries=" << v.stats.rank_queries
                  << "\n";
        return kExitInClass;
      }
      const std::string cert = write_certificate(*v.certificate);
      std::cout << "NotInClass n=" << v.n << " margin=" << (v.certificate->lhs - v.certificate->rhs) << "\n";
      if (out_path.empty()) {
        std::cout << cert;
      } else {
        emit(out_path, cert);
      }
      return kExitCertificate;
    }

    if (*cmd_axioms) {
      const Matroid M = load(in_path);
      std::vector<std::pair<std::string, AxiomSystem>> systems{{"rank", AxiomSystem::rank},
                                                               {"closure", AxiomSystem::closure},
                                                               {"circuits", AxiomSystem::circuits},
                                                               {"independence", AxiomSystem::independence}};
      bool ok = true;
      for (const auto& [name, which] : systems) {
        if (system != "all" && system != name) continue;
        const auto v = validate_axioms(M, which);
        std::cout << name << " " << (v ? v->describe() : std::string("ok")) << "\n";
        ok = ok && !v;
      }
      return ok ? 0 : 1;
    }

    if (*cmd_enum) {
      const Matroid M = load(in_path);
      const SetKind k = kind == "circuits"              ? SetKind::circuits
                        : kind == "bases"               ? SetKind::bases
                        : kind == "hyperplanes"         ? SetKind::hyperplanes
                        : kind == "circuit-hyperplanes" ? SetKind::circuit_hyperplanes
                                                        : SetKind::flats;
      std::string out;
      for (SubsetMask x : enumerate(M, k)) out += format_mask(x) + "\n";
      std::cout << out;
      return 0;
    }

    if (*cmd_bench) {
      const auto dots = range.find("..");
      if (dots == std::string::npos) throw Error("--spike-range expects LO..HI");
      SearchConfig cfg;
      cfg.parallel_width = width;
      const auto rows = bench_spike(to_int(range.substr(0, dots), "range start"),
                                    to_int(range.substr(dots + 2), "range end"), cfg);
      std::cout << bench_csv(rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
