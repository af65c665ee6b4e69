#include "sigtree/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "sigtree/errors.hpp"
#include "sigtree/functionals.hpp"
#include "sigtree/io.hpp"
#include "sigtree/kernels.hpp"
#include "sigtree/lift.hpp"
#include "sigtree/reduction.hpp"
#include "sigtree/rtree.hpp"
#include "sigtree/signature.hpp"

namespace sigtree::cli {

namespace {

using io::json;

void require_inputs(const RunConfig& c, std::size_t min, std::size_t max) {
  if (c.inputs.size() < min || c.inputs.size() > max) {
    throw ValidationError(c.subcommand + ": expected " +
                          (min == max ? std::to_string(min) : std::to_string(min) + ".." + std::to_string(max)) +
                          " input file(s), got " + std::to_string(c.inputs.size()));
  }
}

std::vector<PolyPath> read_inputs(const RunConfig& c) {
  std::vector<PolyPath> paths;
  for (const auto& f : c.inputs) paths.push_back(io::read_path_csv_file(f, c.time_column));
  return paths;
}

json path_json(const PolyPath& x) {
  return json{{"dim", x.dim()}, {"vertices", io::path_to_json(x)}};
}

json nullable(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

// Path-valued results go to --output as CSV, or to stdout as JSON.
struct Result {
  json value;
  std::optional<PolyPath> path;
};

Result batch(const RunConfig& c, bool log) {
  require_inputs(c, 1, SIZE_MAX);
  const std::vector<PolyPath> paths = read_inputs(c);
  const std::vector<GroupElement> sigs = kernels::parallel::signatures(paths, c.depth);
  json all = json::array();
  for (const auto& g : sigs) all.push_back(io::to_json(log ? group_log(g).series() : g.series()));
  return {paths.size() == 1 ? all[0] : all, std::nullopt};
}

Result dispatch(const RunConfig& c) {
  const std::string& cmd = c.subcommand;
  if (cmd == "sig") return batch(c, false);
  if (cmd == "logsig") return batch(c, true);

  if (cmd == "reduce") {
    require_inputs(c, 1, 1);
    const PolyPath r = reduce(read_inputs(c)[0]);
    return {path_json(r), r};
  }
  if (cmd == "is-treelike") {
    require_inputs(c, 1, 1);
    const PolyPath x = read_inputs(c)[0];
    const GroupElement s = sig(x, c.depth);
    const std::optional<int> witness = distinguishing_level(s, TensorSeries::identity(s.dim(), c.depth), c.tol);
    return {json{{"tree_like", is_tree_like(x)}, {"witness_level", nullable(witness)}}, std::nullopt};
  }
  if (cmd == "gen-treelike") {
    require_inputs(c, 0, 0);
    const PolyPath x = sample_tree_like(c.seed, c.moves, c.dim);
    return {path_json(x), x};
  }
  if (cmd == "compare") {
    require_inputs(c, 2, 2);
    const std::vector<PolyPath> paths = read_inputs(c);
    if (paths[0].dim() != paths[1].dim()) throw IncompatibleOperands("compare: paths have different dimensions");
    const auto sigs = kernels::parallel::signatures(paths, c.depth);
    return {json{{"distinguishing_level", nullable(distinguishing_level(sigs[0], sigs[1], c.tol))}}, std::nullopt};
  }
  if (cmd == "lift") {
    require_inputs(c, 1, 1);
    const PolyPath x = read_inputs(c)[0];
    const GroupElement lifted = lift_signature(x, c.depth, c.level);
    return {io::lift_to_json(lifted.series(), GradedSpace(static_cast<int>(x.dim()), c.depth)), std::nullopt};
  }
  if (cmd == "integrate") {
    require_inputs(c, 1, 1);
    if (!c.form) throw ValidationError("integrate: --form is required");
    const PolyPath x = read_inputs(c)[0];
    const Polynomial1Form form = io::form_from_json(io::parse_file(*c.form), static_cast<int>(x.dim()));
    const GroupElement s = sig(x.based_at_origin(), c.depth);
    const double pairing = eval(s, form_to_functional(form, c.depth));
    return {json{{"value", pairing}, {"quadrature", integrate_richardson(form, x, 1024)}}, std::nullopt};
  }
  if (cmd == "tree-dist") {
    require_inputs(c, 2, 2);
    const std::vector<PolyPath> paths = read_inputs(c);
    const TreePoint a(paths[0]);
    const TreePoint b(paths[1]);
    return {json{{"distance", tree_distance(a, b, c.p)},
                 {"meet_length", meet(a, b).length()},
                 {"order", to_string(prefix_order(a, b))}},
            std::nullopt};
  }
  if (cmd == "four-point") {
    FourPointReport report;
    if (c.generate > 0) {
      require_inputs(c, 0, 0);
      const auto points = sample_exact_tree_points(c.seed, c.generate, c.dim);
      if (c.exact) {
        report = four_point_check(points);
      } else {
        std::vector<TreePoint> approx;
        for (const auto& p : points) approx.push_back(to_double(p));
        report = four_point_check(approx, c.tol);
      }
    } else {
      if (c.exact) throw ValidationError("four-point: --exact needs --generate");
      require_inputs(c, 4, SIZE_MAX);
      std::vector<TreePoint> points;
      for (const auto& x : read_inputs(c)) points.emplace_back(x);
      report = four_point_check(points, c.tol);
    }
    return {json{{"points", report.points},
                 {"quadruples", report.quadruples},
                 {"violations", report.violations},
                 {"tree_metric", report.violations == 0}},
            std::nullopt};
  }
  if (cmd == "factorize") {
    require_inputs(c, 1, 1);
    const PolyPath x = read_inputs(c)[0];
    const TreeFactorization f = tree_factorization(x);
    json phi = json::array();
    for (const auto& p : f.phi) phi.push_back(io::path_to_json(p.path()));
    return {json{{"phi", std::move(phi)}, {"psi_check", f.psi_check}, {"height", f.height}}, std::nullopt};
  }
  if (cmd == "pvar") {
    require_inputs(c, 1, 1);
    const PolyPath x = read_inputs(c)[0];
    const double v = c.group ? p_variation(sig_prefix_path(x, c.depth), c.p) : p_variation(x, c.p);
    return {json{{"p", c.p}, {"p_variation", v}}, std::nullopt};
  }
  throw ValidationError("unknown subcommand '" + cmd + "'");
}

void validate(const RunConfig& c) {
  if (c.depth < 1) throw ValidationError("--depth must be at least 1");
  if (c.level < 1) throw ValidationError("--level must be at least 1");
  if (!(c.tol > 0)) throw ValidationError("--tol must be positive");
  if (!(c.p >= 1)) throw ValidationError("--p must be at least 1");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Result r = dispatch(config);
    if (config.output) {
      std::ofstream file(*config.output);
      if (!file) throw ValidationError("cannot write '" + *config.output + "'");
      if (r.path) {
        io::write_path_csv(file, *r.path);
      } else {
        file << io::dump(r.value) << '\n';
      }
    } else {
      out << io::dump(r.value) << '\n';
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path signatures, reduction and tree-like paths"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub, bool files) {
    if (files) {
      sub->add_option("inputs", c.inputs, "CSV path files");
      sub->add_flag("--time-column", c.time_column, "headerless CSV has a leading time column");
    }
    sub->add_option("--depth", c.depth, "signature truncation depth");
    sub->add_option("--tol", c.tol, "tolerance");
    sub->add_option("-o,--output", c.output, "write the result to a file");
  };

  add_common(app.add_subcommand("sig", "truncated signature of each input"), true);
  add_common(app.add_subcommand("logsig", "log-signature of each input"), true);
  add_common(app.add_subcommand("reduce", "reduced path (CSV with --output)"), true);
  add_common(app.add_subcommand("is-treelike", "tree-likeness test with signature witness"), true);
  auto* gen = app.add_subcommand("gen-treelike", "random tree-like path");
  add_common(gen, false);
  gen->add_option("--seed", c.seed);
  gen->add_option("--moves", c.moves);
  gen->add_option("--dim", c.dim);
  add_common(app.add_subcommand("compare", "first level where two signatures differ"), true);
  auto* lift = app.add_subcommand("lift", "signature of the signature path, by graded block");
  add_common(lift, true);
  lift->add_option("--level", c.level, "level of the lifted signature");
  auto* integrate = app.add_subcommand("integrate", "line integral of a polynomial 1-form");
  add_common(integrate, true);
  integrate->add_option("--form", c.form, "form JSON")->required();
  auto* dist = app.add_subcommand("tree-dist", "tree distance between two reduced paths");
  add_common(dist, true);
  dist->add_option("--p", c.p);
  auto* four = app.add_subcommand("four-point", "four-point condition over tree points");
  add_common(four, true);
  four->add_option("--generate", c.generate, "number of random tree points instead of files");
  four->add_option("--seed", c.seed);
  four->add_option("--dim", c.dim);
  four->add_flag("--exact", c.exact, "rational arithmetic (generated points only)");
  add_common(app.add_subcommand("factorize", "tree factorization of a tree-like path"), true);
  auto* pvar = app.add_subcommand("pvar", "p-variation of a path");
  add_common(pvar, true);
  pvar->add_option("--p", c.p);
  pvar->add_flag("--group", c.group, "use the signature path at --depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace sigtree::cli
