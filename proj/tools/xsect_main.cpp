// xsect: realizability checks and constructions for prescribed cross sections.
//
// Exit codes: 0 feasible / success, 1 infeasible / verification failed,
// 2 usage, parse or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "xsect/binary_matrix.hpp"
#include "xsect/errors.hpp"
#include "xsect/feasibility.hpp"
#include "xsect/marginal.hpp"
#include "xsect/netpbm.hpp"
#include "xsect/reconstruct.hpp"
#include "xsect/report.hpp"
#include "xsect/svg.hpp"

namespace {

using namespace xsect;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void print_quantization(std::ostream& os, const std::string& name, const Quantized& q) {
  os << name << " quantization: L1 error " << to_string(q.l1_error) << " ("
     << q.l1_error.convert_to<double>() << "), sup error " << to_string(q.sup_error) << " ("
     << q.sup_error.convert_to<double>() << ")\n";
}

nlohmann::json quantization_json(const Quantized& q) {
  return {{"l1_error", to_string(q.l1_error)}, {"sup_error", to_string(q.sup_error)}};
}

struct Options {
  std::string first;
  std::string second;
  std::string third;
  std::string output;
  std::string trace_path;
  std::string svg_path;
  std::string summary_path;
  std::string method = "greedy";
  std::string interp = "step";
  int depth = 4;
  int refinement = 4;
  std::optional<int> image_refinement;
  bool discrete = false;
  bool continuous = false;
  bool verify_oracle = false;
  bool exact = false;
  bool strict = false;
  bool json = false;
};

Interpolation interpolation(const Options& o) {
  return o.interp == "linear" ? Interpolation::linear : Interpolation::step;
}

int run_check(const Options& o) {
  FeasibilityReport report;
  nlohmann::json doc;
  if (o.discrete) {
    const Partition p(read_partition(o.first));
    const Partition q(read_partition(o.second));
    report = check_gale_ryser(p, q);
  } else {
    const GridParams params(o.depth, o.refinement);
    const auto qf = quantize(read_marginal(o.first, interpolation(o)), params);
    const auto qg = quantize(read_marginal(o.second, interpolation(o)), params);
    report = check_hlp(qf.function, qg.function);
    if (!o.json) {
      print_quantization(std::cout, "f", qf);
      print_quantization(std::cout, "g", qg);
    }
    doc["quantization"] = {{"f", quantization_json(qf)}, {"g", quantization_json(qg)}};
  }
  if (o.json) {
    doc["report"] = to_json(report);
    std::cout << doc.dump(2) << '\n';
  } else {
    write_text(std::cout, report);
  }
  return report.feasible() ? kOk : kNo;
}

int run_realize_matrix(const Options& o) {
  const Margins margins{read_partition(o.first), read_partition(o.second)};
  const auto report = check_gale_ryser(Partition(margins.row_targets), Partition(margins.col_targets));
  if (o.verify_oracle) {
    const auto found = brute_force_realize(margins);
    const bool agree = found.has_value() == report.feasible();
    std::cout << "oracle: " << (found ? "realizable" : "not realizable") << " ("
              << (agree ? "agrees" : "DISAGREES") << " with Gale-Ryser)\n";
    if (!agree) return kNo;
  }
  if (!report.feasible()) {
    write_text(std::cout, report);
    return kNo;
  }
  BinaryMatrix a;
  if (o.method == "swap") {
    auto built = swap_construct_with_moves(margins);
    std::cout << "moves: " << built.moves.size() << '\n';
    a = std::move(built.matrix);
  } else {
    a = ryser_construct(margins);
  }
  auto out = open_out(o.output);
  if (ends_with(o.output, ".pbm")) {
    write_pbm(out, a);
  } else {
    write_matrix_text(out, a);
  }
  std::cout << "verdict: feasible\nwrote " << a.rows() << "x" << a.cols() << " matrix to " << o.output << '\n';
  return kOk;
}

int run_realize_set(const Options& o) {
  const GridParams params(o.depth, o.refinement);
  const auto qf = quantize(read_marginal(o.first, interpolation(o)), params);
  const auto qg = quantize(read_marginal(o.second, interpolation(o)), params);
  print_quantization(std::cout, "f", qf);
  print_quantization(std::cout, "g", qg);

  const auto report = check_hlp(qf.function, qg.function);
  if (!report.feasible()) {
    write_text(std::cout, report);
    return kNo;
  }

  std::optional<DyadicSet> set;
  nlohmann::json summary_doc;
  Trace trace;
  if (o.exact) {
    set = realize_exact(qf.function, qg.function, params);
    if (set) {
      std::cout << "exact: realized through the discrete constructor\n";
      summary_doc = {{"N", params.depth}, {"K", params.refinement}, {"mode", "exact"},
                     {"feasibility", to_json(report)},
                     {"final_residual", residual(*set, qf.function).to_string()}};
    } else {
      std::cout << "exact: marginals are not whole-cell multiples; using the swap construction\n";
    }
  }
  if (!set) {
    auto result = reconstruct(qf.function, qg.function, params);
    write_text(std::cout, result.summary);
    summary_doc = to_json(result.summary);
    trace = std::move(result.trace);
    set = std::move(result.set);
  }
  summary_doc["quantization"] = {{"f", quantization_json(qf)}, {"g", quantization_json(qg)}};

  {
    auto out = open_out(o.output);
    write_set_image(out, *set);
  }
  if (!o.trace_path.empty()) {
    auto out = open_out(o.trace_path);
    write_trace(out, params, trace);
  }
  if (!o.svg_path.empty()) {
    auto out = open_out(o.svg_path);
    write_set_svg(out, *set);
  }
  if (!o.summary_path.empty()) {
    auto out = open_out(o.summary_path);
    out << summary_doc.dump(2) << '\n';
  }
  std::cout << "residual: " << residual(*set, qf.function) << '\n';
  return kOk;
}

int run_verify(const Options& o) {
  auto in = open_in(o.first);
  const DyadicSet set = read_set_image(in, o.image_refinement);
  const GridParams params = set.params();
  const auto qf = quantize(read_marginal(o.second, interpolation(o)), params);
  const auto qg = quantize(read_marginal(o.third, interpolation(o)), params);

  const StepFunction v = vertical_section(set);
  const StepFunction h = horizontal_section(set);
  const auto necessity = check_hlp(v, h);
  const bool h_exact = h == qg.function;
  const Dyadic res = residual(set, qf.function);
  const Dyadic h_err = l1_distance(h, qg.function);

  std::cout << "grid: N=" << params.depth << " K=" << params.refinement << '\n';
  std::cout << "horizontal section equals g: " << (h_exact ? "yes" : "no") << " (L1 gap " << h_err << ")\n";
  std::cout << "vertical section residual: " << res << " (" << res.to_double() << ")\n";
  std::cout << "cross sections of the set pass the majorization test: "
            << (necessity.feasible() ? "yes" : "no") << '\n';
  bool ok = h_exact && necessity.feasible();
  if (o.strict) ok = ok && res.is_zero();
  return ok ? kOk : kNo;
}

int run_audit(const Options& o) {
  auto in = open_in(o.first);
  const auto parsed = read_trace(in);
  const auto qf = quantize(read_marginal(o.second, interpolation(o)), parsed.params);
  const auto qg = quantize(read_marginal(o.third, interpolation(o)), parsed.params);
  const auto result = audit_trace(parsed.records, qf.function, qg.function, parsed.params);
  if (result.passed()) {
    std::cout << "audit: pass (" << result.records_checked << " swaps replayed)\n";
    return kOk;
  }
  const auto& v = *result.violation;
  std::cout << "audit: violation at record " << v.record << ": " << v.invariant << " " << v.detail << '\n';
  return kNo;
}

int run_render(const Options& o) {
  const auto raw = read_marginal(o.first, interpolation(o));
  StepFunction f;
  if (auto exact = exact_step_function(raw)) {
    f = *exact;
  } else {
    f = quantize(raw, GridParams(o.depth, o.refinement)).function;
  }
  auto out = open_out(o.output);
  write_marginal_svg(out, f);
  std::cout << "wrote " << o.output << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xsect: plane sets and (0,1)-matrices with prescribed cross sections"};
  app.require_subcommand(1);
  Options o;

  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("-N,--depth", o.depth, "generation depth N (finest cell side 2^-N)")
        ->check(CLI::Range(1, 30));
    cmd->add_option("-K,--refinement", o.refinement, "sub-cell refinement K (fill unit 2^-(N+K))")
        ->check(CLI::Range(0, 29));
  };
  auto add_interp = [&](CLI::App* cmd) {
    cmd->add_option("--interp", o.interp, "how marginal knots are joined")
        ->check(CLI::IsMember({"step", "linear"}));
  };

  auto* check = app.add_subcommand("check", "decide realizability of a marginal pair");
  auto* disc = check->add_flag("--discrete", o.discrete, "inputs are partition files (Gale-Ryser)");
  auto* cont = check->add_flag("--continuous", o.continuous, "inputs are marginal files");
  disc->excludes(cont);
  check->add_option("first", o.first, "row sums / f")->required();
  check->add_option("second", o.second, "column sums / g")->required();
  check->add_flag("--json", o.json, "machine-readable output");
  add_grid(check);
  add_interp(check);

  auto* rm = app.add_subcommand("realize-matrix", "build a (0,1)-matrix with given row and column sums");
  rm->add_option("rows", o.first, "row sums file")->required();
  rm->add_option("cols", o.second, "column sums file")->required();
  rm->add_option("-o,--output", o.output, "output (.pbm for PBM P1, otherwise 0/1 text)")->required();
  rm->add_option("--method", o.method, "constructor")->check(CLI::IsMember({"greedy", "swap"}));
  rm->add_flag("--verify-oracle", o.verify_oracle, "cross-check existence by exhaustive search");

  auto* rs = app.add_subcommand("realize-set", "construct a plane set with cross sections f and g");
  rs->add_option("f", o.first, "vertical cross-section marginal")->required();
  rs->add_option("g", o.second, "horizontal cross-section marginal")->required();
  rs->add_option("-o,--output", o.output, "set image (PGM P2, or PBM P1 when K=0)")->required();
  rs->add_option("--trace", o.trace_path, "write the swap trace (JSON lines)");
  rs->add_option("--svg", o.svg_path, "write an SVG drawing of the set");
  rs->add_option("--summary", o.summary_path, "write the machine-readable summary (JSON)");
  rs->add_flag("--exact", o.exact, "use the discrete constructor when marginals are whole cells");
  add_grid(rs);
  add_interp(rs);

  auto* vf = app.add_subcommand("verify", "recompute the cross sections of a set image");
  vf->add_option("set", o.first, "set image")->required();
  vf->add_option("f", o.second, "vertical cross-section marginal")->required();
  vf->add_option("g", o.third, "horizontal cross-section marginal")->required();
  vf->add_option("-K,--refinement", o.image_refinement, "K for PGM images without an xsect tag");
  vf->add_flag("--strict", o.strict, "also require the vertical section to equal f");
  add_interp(vf);

  auto* au = app.add_subcommand("audit", "replay a swap trace and check every swap invariant");
  au->add_option("trace", o.first, "trace file")->required();
  au->add_option("f", o.second, "vertical cross-section marginal")->required();
  au->add_option("g", o.third, "horizontal cross-section marginal")->required();
  add_interp(au);

  auto* rd = app.add_subcommand("render", "plot a marginal with its rearrangement and distribution");
  rd->add_option("f", o.first, "marginal file")->required();
  rd->add_option("-o,--output", o.output, "SVG output")->required();
  add_grid(rd);
  add_interp(rd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (check->parsed()) {
      if (!o.discrete && !o.continuous) throw CLI::ValidationError("check", "pass --discrete or --continuous");
      return run_check(o);
    }
    if (rm->parsed()) return run_realize_matrix(o);
    if (rs->parsed()) return run_realize_set(o);
    if (vf->parsed()) return run_verify(o);
    if (au->parsed()) return run_audit(o);
    if (rd->parsed()) return run_render(o);
  } catch (const InfeasibleError& e) {
    write_text(std::cout, e.report());
    return kNo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
