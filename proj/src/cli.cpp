#include "copulab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copulab/analysis.hpp"
#include "copulab/constructions.hpp"
#include "copulab/copula.hpp"
#include "copulab/errors.hpp"
#include "copulab/evc.hpp"
#include "copulab/pickands.hpp"
#include "copulab/spec_io.hpp"

namespace copulab::cli {

namespace {

using nlohmann::json;

// 17 significant digits: enough for a lossless double round trip in CSV.
std::string f17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file: " + path);
    f << text;
}

void emit_error(std::ostream& err, const std::string& msg) {
    err << json{{"error", msg}}.dump() << "\n";
}

struct Options {
    std::string spec;
    std::string spec_b;
    std::string output;
    bool dump_spec = false;
    bool csv = false;
    int grid = 0;
    int n = 1000;
    int big_n = 8;
    std::uint64_t seed = 0;
    double p = 1.0;
    double x = 0.5;
    double y = 0.5;
    double h = 1e-4;
    double tol = 1e-12;
    double threshold = 1e-2;
    std::string metric_name = "dinf";
};

int cmd_pickands_validate(const Options& o, std::ostream& out, std::ostream& err) {
    PickandsMeasure m = load_measure(o.spec);
    if (o.dump_spec) {
        emit(measure_to_json_text(m) + "\n", o.output, out);
        return 0;
    }
    MeasureValidation v = validate_measure(m);
    json report = {{"pass", v.pass(o.tol)},
                   {"mass_residual", v.mass_residual},
                   {"mean_residual", v.mean_residual},
                   {"structure_ok", v.structure_ok}};
    if (!v.structure_error.empty())
        report["structure_error"] = v.structure_error;
    if (!v.pass(o.tol)) {
        std::string msg = "measure invalid: mean residual " + f17(v.mean_residual) +
                          ", mass residual " + f17(v.mass_residual);
        if (!v.structure_ok)
            msg += ", " + v.structure_error;
        emit_error(err, msg);
        return 2;
    }
    emit(report.dump(2) + "\n", o.output, out);
    return 0;
}

int cmd_pickands_to_function(const Options& o, std::ostream& out) {
    PickandsMeasure m = load_measure(o.spec);
    if (o.dump_spec) {
        emit(measure_to_json_text(m) + "\n", o.output, out);
        return 0;
    }
    PickandsFunction a = upsilon(m);
    int g = o.grid > 0 ? o.grid : 1000;
    std::string csv = "t,A,DplusA,GA\n";
    for (int i = 0; i <= g; ++i) {
        double t = static_cast<double>(i) / g;
        csv += f17(t) + "," + f17(a(t)) + "," + f17(a.d_plus(t)) + "," +
               f17(g_a(a, t)) + "\n";
    }
    emit(csv, o.output, out);
    return 0;
}

int cmd_evc_eval(const Options& o, bool have_y, std::ostream& out) {
    Copula c = load_copula(o.spec);
    if (o.dump_spec) {
        emit(copula_to_json_text(c) + "\n", o.output, out);
        return 0;
    }
    if (have_y) {
        json r = {{"x", o.x},
                  {"y", o.y},
                  {"cdf", c.cdf(o.x, o.y)},
                  {"kernel", c.kernel_cdf(o.x, o.y)}};
        emit(r.dump(2) + "\n", o.output, out);
        return 0;
    }
    int g = o.grid > 0 ? o.grid : 200;
    std::string csv = "y,cdf,kernel\n";
    for (int j = 0; j <= g; ++j) {
        double y = static_cast<double>(j) / g;
        csv += f17(y) + "," + f17(c.cdf(o.x, y)) + "," + f17(c.kernel_cdf(o.x, y)) + "\n";
    }
    emit(csv, o.output, out);
    return 0;
}

int cmd_evc_sample(const Options& o, std::ostream& out) {
    Copula c = load_copula(o.spec);
    if (o.dump_spec) {
        emit(copula_to_json_text(c) + "\n", o.output, out);
        return 0;
    }
    SampleSet s = sample(c, o.n, o.seed);
    std::string csv = "x,y\n";
    for (const auto& p : s.points)
        csv += f17(p[0]) + "," + f17(p[1]) + "\n";
    emit(csv, o.output, out);
    return 0;
}

int cmd_evc_mass_decomp(const Options& o, std::ostream& out) {
    Copula c = load_copula(o.spec);
    if (o.dump_spec) {
        emit(copula_to_json_text(c) + "\n", o.output, out);
        return 0;
    }
    MassDecomposition d = component_masses(c);
    json atoms = json::array();
    for (const auto& a : d.per_atom)
        atoms.push_back({{"t", a.t}, {"mass", a.mass}});
    json r = {{"per_atom", atoms}, {"discrete", d.discrete}, {"rest", d.rest}};
    emit(r.dump(2) + "\n", o.output, out);
    return 0;
}

int cmd_evc_support(const Options& o, std::ostream& out) {
    Copula c = load_copula(o.spec);
    if (o.dump_spec) {
        emit(copula_to_json_text(c) + "\n", o.output, out);
        return 0;
    }
    SupportBand b = support_bounds(c, o.x);
    json r = {{"L", b.lo}, {"R", b.hi}, {"x", o.x}, {"y_lo", b.y_lo}, {"y_hi", b.y_hi}};
    emit(r.dump(2) + "\n", o.output, out);
    return 0;
}

int cmd_metric(const Options& o, std::ostream& out) {
    Copula a = load_copula(o.spec);
    Copula b = load_copula(o.spec_b);
    MetricReport r;
    if (o.metric_name == "dinf")
        r = o.grid > 0 ? d_inf(a, b, o.grid) : d_inf(a, b);
    else
        r = o.grid > 0 ? d_p(a, b, o.p, o.grid) : d_p(a, b, o.p);
    json j = {{"metric", r.metric}, {"value", r.value}, {"grid_n", r.grid_n}};
    if (r.metric != "d_inf")
        j["p"] = std::isinf(r.p) ? json("inf") : json(r.p);
    emit(j.dump(2) + "\n", o.output, out);
    return 0;
}

int cmd_approx(const Options& o, std::ostream& out) {
    Copula c = load_copula(o.spec);
    Copula cb = checkerboard_approx(c, o.big_n, independence());
    emit(copula_to_json_text(cb) + "\n", o.output, out);
    return 0;
}

int cmd_diag_derivative(const Options& o, bool have_y, std::ostream& out) {
    Copula c = load_copula(o.spec);
    std::vector<double> ys;
    if (have_y) {
        ys.push_back(o.y);
    } else {
        int g = o.grid > 0 ? o.grid : 100;
        for (int j = 1; j < g; ++j)
            ys.push_back(static_cast<double>(j) / g);
    }
    if (o.csv) {
        std::string csv = "y,plus,minus,gap\n";
        for (double y : ys) {
            DerivativeGap d = derivative_gap(c, o.x, y);
            csv += f17(y) + "," + f17(d.plus.estimate) + "," + f17(d.minus.estimate) +
                   "," + f17(d.gap) + "\n";
        }
        emit(csv, o.output, out);
        return 0;
    }
    json rows = json::array();
    for (double y : ys) {
        DerivativeGap d = derivative_gap(c, o.x, y);
        rows.push_back({{"y", y},
                        {"plus", d.plus.estimate},
                        {"minus", d.minus.estimate},
                        {"gap", d.gap}});
    }
    json r = {{"x", o.x}, {"rows", rows}};
    emit(r.dump(2) + "\n", o.output, out);
    return 0;
}

int cmd_diag_scan(const Options& o, std::ostream& out) {
    Copula c = load_copula(o.spec);
    int g = o.grid > 0 ? o.grid : 400;
    std::vector<NondiffPoint> pts = nondiff_scan(c, o.x, g, o.threshold);
    json arr = json::array();
    for (const auto& p : pts)
        arr.push_back({{"y", p.y}, {"gap", p.gap}, {"analytic", p.analytic}});
    json r = {{"x", o.x}, {"grid_n", g}, {"threshold", o.threshold}, {"points", arr}};
    emit(r.dump(2) + "\n", o.output, out);
    return 0;
}

int cmd_diag_schwarz(const Options& o, std::ostream& out) {
    Copula c = load_copula(o.spec);
    int g = o.grid > 0 ? o.grid : 21;
    double r = schwarz_check(c, g, o.h);
    json j = {{"grid_n", g}, {"h", o.h}, {"max_residual", r}};
    emit(j.dump(2) + "\n", o.output, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"copulab: dependence measures, extreme value copulas, kernels, diagnostics"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", o.output, "write the artifact to this file instead of stdout");
    };
    auto add_dump = [&](CLI::App* cmd) {
        cmd->add_flag("--dump-spec", o.dump_spec, "echo the parsed spec as canonical JSON and exit");
    };

    CLI::App* pickands = app.add_subcommand("pickands", "dependence measure operations");
    pickands->require_subcommand(1);
    CLI::App* pk_validate = pickands->add_subcommand("validate", "check mass, mean and structure of a measure spec");
    pk_validate->add_option("spec", o.spec, "measure spec file")->required();
    pk_validate->add_option("--tol", o.tol, "residual tolerance (default 1e-12)");
    add_output(pk_validate);
    add_dump(pk_validate);
    CLI::App* pk_tofun = pickands->add_subcommand("to-function", "tabulate A, D+A and G_A on a grid (CSV)");
    pk_tofun->add_option("spec", o.spec, "measure spec file")->required();
    pk_tofun->add_option("--grid", o.grid, "number of panels (default 1000)")->check(CLI::PositiveNumber);
    add_output(pk_tofun);
    add_dump(pk_tofun);

    CLI::App* evc = app.add_subcommand("evc", "copula evaluation, sampling and mass structure");
    evc->require_subcommand(1);
    CLI::App* evc_eval = evc->add_subcommand("eval", "evaluate cdf and kernel at a point or along a section");
    evc_eval->add_option("spec", o.spec, "copula spec file or builtin M|W|Pi")->required();
    CLI::Option* eval_x = evc_eval->add_option("-x,--x", o.x, "section abscissa")->required();
    CLI::Option* eval_y = evc_eval->add_option("-y,--y", o.y, "single evaluation point (JSON output)");
    evc_eval->add_option("--grid", o.grid, "y-panels for CSV section output (default 200)")->check(CLI::PositiveNumber);
    add_output(evc_eval);
    add_dump(evc_eval);
    (void)eval_x;
    CLI::App* evc_sample = evc->add_subcommand("sample", "draw reproducible conditional-inverse samples (CSV)");
    evc_sample->add_option("spec", o.spec, "copula spec file or builtin M|W|Pi")->required();
    evc_sample->add_option("-n,--n", o.n, "number of samples (default 1000)")->check(CLI::PositiveNumber);
    evc_sample->add_option("--seed", o.seed, "RNG seed; sampling is a pure function of it")->required();
    add_output(evc_sample);
    add_dump(evc_sample);
    CLI::App* evc_mass = evc->add_subcommand("mass-decomp", "discrete versus continuous mass split of an EVC");
    evc_mass->add_option("spec", o.spec, "copula spec file")->required();
    add_output(evc_mass);
    add_dump(evc_mass);
    CLI::App* evc_support = evc->add_subcommand("support", "support endpoints and the power-curve band at x");
    evc_support->add_option("spec", o.spec, "copula spec file")->required();
    evc_support->add_option("-x,--x", o.x, "abscissa for the band (default 0.5)");
    add_output(evc_support);
    add_dump(evc_support);

    CLI::App* metric = app.add_subcommand("metric", "distance between two copulas (JSON report)");
    metric->add_option("spec_a", o.spec, "first copula spec file or builtin M|W|Pi")->required();
    metric->add_option("spec_b", o.spec_b, "second copula spec file or builtin M|W|Pi")->required();
    metric->add_option("--metric", o.metric_name, "dinf (uniform cdf) or dp (kernel distance)")
        ->check(CLI::IsMember({"dinf", "dp"}));
    metric->add_option("-p,--p", o.p, "exponent for dp; inf for the sup version");
    metric->add_option("--grid", o.grid, "grid resolution override")->check(CLI::PositiveNumber);
    add_output(metric);

    CLI::App* approx = app.add_subcommand("approx", "checkerboard approximation; emits the resulting spec JSON");
    approx->add_option("spec", o.spec, "copula spec file or builtin M|W|Pi")->required();
    approx->add_option("-N,--N", o.big_n, "checkerboard resolution (default 8)")->check(CLI::PositiveNumber);
    add_output(approx);

    CLI::App* diag = app.add_subcommand("diagnose", "derivative and density diagnostics");
    diag->require_subcommand(1);
    CLI::App* dg_deriv = diag->add_subcommand("derivative", "one-sided partial derivative probes along a section");
    dg_deriv->add_option("spec", o.spec, "copula spec file or builtin M|W|Pi")->required();
    dg_deriv->add_option("-x,--x", o.x, "section abscissa")->required();
    CLI::Option* deriv_y = dg_deriv->add_option("-y,--y", o.y, "probe a single y instead of a grid");
    dg_deriv->add_option("--grid", o.grid, "y-grid resolution (default 100)")->check(CLI::PositiveNumber);
    dg_deriv->add_flag("--csv", o.csv, "emit CSV rows y,plus,minus,gap instead of JSON");
    add_output(dg_deriv);
    CLI::App* dg_scan = diag->add_subcommand("scan", "locate non-differentiability points along a section");
    dg_scan->add_option("spec", o.spec, "copula spec file or builtin M|W|Pi")->required();
    dg_scan->add_option("-x,--x", o.x, "section abscissa")->required();
    dg_scan->add_option("--grid", o.grid, "y-grid resolution (default 400)")->check(CLI::PositiveNumber);
    dg_scan->add_option("--threshold", o.threshold, "minimum reportable gap (default 1e-2)");
    add_output(dg_scan);
    CLI::App* dg_schwarz = diag->add_subcommand("schwarz", "mixed-partial agreement of the two kernels");
    dg_schwarz->add_option("spec", o.spec, "copula spec file or builtin M|W|Pi")->required();
    dg_schwarz->add_option("--grid", o.grid, "interior grid resolution (default 21)")->check(CLI::PositiveNumber);
    dg_schwarz->add_option("--step", o.h, "central difference step (default 1e-4)");
    add_output(dg_schwarz);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        emit_error(err, std::string("argument error: ") + e.what());
        return 2;
    }

    try {
        if (pk_validate->parsed())
            return cmd_pickands_validate(o, out, err);
        if (pk_tofun->parsed())
            return cmd_pickands_to_function(o, out);
        if (evc_eval->parsed())
            return cmd_evc_eval(o, eval_y->count() > 0, out);
        if (evc_sample->parsed())
            return cmd_evc_sample(o, out);
        if (evc_mass->parsed())
            return cmd_evc_mass_decomp(o, out);
        if (evc_support->parsed())
            return cmd_evc_support(o, out);
        if (metric->parsed())
            return cmd_metric(o, out);
        if (approx->parsed())
            return cmd_approx(o, out);
        if (dg_deriv->parsed())
            return cmd_diag_derivative(o, deriv_y->count() > 0, out);
        if (dg_scan->parsed())
            return cmd_diag_scan(o, out);
        if (dg_schwarz->parsed())
            return cmd_diag_schwarz(o, out);
        emit_error(err, "no subcommand selected");
        return 2;
    } catch (const Error& e) {
        emit_error(err, e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(err, std::string("internal error: ") + e.what());
        return 1;
    }
}

} // namespace copulab::cli
