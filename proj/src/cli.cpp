#include "hbvp/cli.hpp"

#include "hbvp/errors.hpp"
#include "hbvp/expression.hpp"
#include "hbvp/neumann.hpp"

#include <CLI11.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

namespace hbvp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string number_text(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void collect_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix,
                     std::vector<std::string>& unknown) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) unknown.push_back(prefix + key);
    }
}

const json* member(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double angle_value(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return parse_constant(v.get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(key + ": " + e.what());
        }
    }
    throw ConfigError(key + " must be a number or a constant expression");
}

std::string angle_text(const json& v, const std::string& key) {
    if (v.is_string()) {
        angle_value(v, key);
        return v.get<std::string>();
    }
    return number_text(angle_value(v, key));
}

template <class T>
T typed(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key + " has the wrong type");
    }
}

std::size_t count_value(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key + " must be a non-negative integer");
    return v.get<std::size_t>();
}

void check_angle_range(double a, const std::string& key) {
    if (!(a >= 0.0 && a < two_pi)) throw ConfigError(key + " must lie in [0, 2*pi)");
}

std::vector<std::string> boundary_variables() { return {"theta", "x", "y"}; }

// Output files of one run; removed again when the run fails.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const fs::path path = dir_ / name;
        std::ofstream out(path);
        if (!out) throw ConfigError("cannot write " + path.string());
        written_.push_back(path);
        body(out);
        if (!out) throw ConfigError("failed writing " + path.string());
    }

    void discard() {
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
        written_.clear();
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

class DirectoryLock {
public:
    explicit DirectoryLock(const fs::path& dir) {
        const fs::path path = dir / ".hbvp.lock";
        fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) throw ConfigError("cannot create lock file " + path.string());
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            throw ConfigError("output directory " + dir.string() + " is in use by another run");
        }
    }
    ~DirectoryLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
    int fd_ = -1;
};

void write_field(std::ostream& out, const HarmonicSolution& sol, const RunConfig& config) {
    out.precision(17);
    out << "x,y,u\n";
    for (const cplx& w : grid_points(config.grid)) {
        const bool inside = sol.map() ? sol.map()->contains(w) : std::abs(w) < 1.0;
        if (inside) out << w.real() << ',' << w.imag() << ',' << sol.u(w) << '\n';
    }
}

void trace(std::ostream& out, const RunConfig& config, const HarmonicSolution& sol) {
    const auto& s = sol.f_source();
    out << "problem=" << config.problem << " domain=" << (config.rho.empty() ? "disk" : "starlike")
        << " N=" << config.n << '\n';
    out << "alpha_jumps=" << s.alpha.jumps().size() << " clamped_nodes=" << s.clamped << '\n';
    out << "terms A=" << s.A.coefficients().size() << " g=" << s.g.coefficients().size()
        << " F=" << sol.F().series().coefficients().size() << '\n';
    out << "u(0)=" << number_text(sol.u(0.0)) << '\n';
    for (const auto& note : sol.notes) out << "note: " << note << '\n';
}

std::vector<double> singular_angles(const Problem& problem) {
    std::vector<double> out = problem.phi.jump_angles();
    for (double a : problem.nu.base().jump_angles()) out.push_back(a);
    for (const auto& j : measurable_arg(problem.nu).jumps()) out.push_back(j.angle);
    return out;
}

}  // namespace

json RunConfig::to_json() const {
    json doc;
    doc["problem"] = problem;
    if (rho.empty()) {
        doc["domain"] = "disk";
    } else {
        doc["domain"] = {{"starlike", {{"rho", rho}}}};
    }
    doc["nu"] = nu;
    json pieces = json::array();
    for (const auto& p : phi) pieces.push_back({{"from", p.from}, {"to", p.to}, {"expr", p.expr}});
    doc["phi"] = pieces;
    doc["params"] = {{"N", n},           {"cut", cut},           {"rho_sample", rho_sample}, {"hom_points", hom_points},
                     {"hom_coeffs", hom_coeffs}, {"d0", d0}, {"k", k}};
    doc["verify"] = {{"V", verify.vertices}, {"tol", verify.tol},     {"delta", verify.delta},
                     {"apertures", verify.apertures}, {"seed", verify.seed}};
    doc["outputs"] = {{"field_csv", field_csv}, {"report", report}, {"grid", {{"n", grid.n}, {"extent", grid.extent}}}};
    return doc;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
    std::vector<std::string> unknown;
    collect_unknown(doc, {"problem", "domain", "nu", "phi", "params", "verify", "outputs"}, "", unknown);
    if (const json* p = member(doc, "params"); p && p->is_object())
        collect_unknown(*p, {"N", "cut", "rho_sample", "hom_points", "hom_coeffs", "d0", "k"}, "params.", unknown);
    if (const json* v = member(doc, "verify"); v && v->is_object())
        collect_unknown(*v, {"V", "tol", "delta", "apertures", "seed"}, "verify.", unknown);
    if (const json* o = member(doc, "outputs"); o && o->is_object()) {
        collect_unknown(*o, {"field_csv", "report", "grid"}, "outputs.", unknown);
        if (const json* g = member(*o, "grid"); g && g->is_object())
            collect_unknown(*g, {"n", "extent"}, "outputs.grid.", unknown);
    }
    if (const json* d = member(doc, "domain"); d && d->is_object()) {
        collect_unknown(*d, {"starlike"}, "domain.", unknown);
        if (const json* s = member(*d, "starlike"); s && s->is_object())
            collect_unknown(*s, {"rho"}, "domain.starlike.", unknown);
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError("unknown configuration keys: " + list);
    }

    RunConfig c;
    if (const json* p = member(doc, "problem")) c.problem = typed<std::string>(*p, "problem");
    if (c.problem != "neumann" && c.problem != "directional")
        throw ConfigError("problem must be \"neumann\" or \"directional\"");

    if (const json* d = member(doc, "domain")) {
        if (d->is_string()) {
            if (d->get<std::string>() != "disk") throw ConfigError("domain must be \"disk\" or {\"starlike\": ...}");
        } else if (d->is_object() && d->contains("starlike") && (*d)["starlike"].contains("rho")) {
            c.rho = typed<std::string>((*d)["starlike"]["rho"], "domain.starlike.rho");
            Expression::parse(c.rho, {"a"});
        } else {
            throw ConfigError("domain must be \"disk\" or {\"starlike\": {\"rho\": ...}}");
        }
    }

    if (const json* v = member(doc, "nu")) c.nu = typed<std::string>(*v, "nu");
    if (c.nu != "normal") {
        if (c.problem == "neumann") throw ConfigError("nu must be \"normal\" for the neumann problem");
        Expression::parse(c.nu, boundary_variables());
    }

    const json* phi = member(doc, "phi");
    if (!phi) throw ConfigError("missing key: phi");
    if (phi->is_string()) {
        c.phi.push_back({"0", "2*pi", phi->get<std::string>()});
    } else if (phi->is_array() && !phi->empty()) {
        for (std::size_t k = 0; k < phi->size(); ++k) {
            const json& piece = (*phi)[k];
            const std::string key = "phi[" + std::to_string(k) + "]";
            if (!piece.is_object() || !piece.contains("from") || !piece.contains("to") || !piece.contains("expr"))
                throw ConfigError(key + " needs from, to and expr");
            for (const auto& [name, value] : piece.items()) {
                if (name != "from" && name != "to" && name != "expr")
                    throw ConfigError("unknown configuration keys: " + key + "." + name);
            }
            c.phi.push_back({angle_text(piece["from"], key + ".from"), angle_text(piece["to"], key + ".to"),
                             typed<std::string>(piece["expr"], key + ".expr")});
        }
    } else {
        throw ConfigError("phi must be an expression or a non-empty list of pieces");
    }

    if (const json* p = member(doc, "params")) {
        if (!p->is_object()) throw ConfigError("params must be an object");
        if (const json* v = member(*p, "N")) c.n = count_value(*v, "params.N");
        if (const json* v = member(*p, "cut")) c.cut = angle_value(*v, "params.cut");
        if (const json* v = member(*p, "rho_sample")) c.rho_sample = typed<double>(*v, "params.rho_sample");
        if (const json* v = member(*p, "hom_points")) {
            if (!v->is_array()) throw ConfigError("params.hom_points must be a list of angles");
            for (std::size_t k = 0; k < v->size(); ++k)
                c.hom_points.push_back(angle_value((*v)[k], "params.hom_points[" + std::to_string(k) + "]"));
        }
        if (const json* v = member(*p, "hom_coeffs")) c.hom_coeffs = typed<std::vector<double>>(*v, "params.hom_coeffs");
        if (const json* v = member(*p, "d0")) c.d0 = typed<double>(*v, "params.d0");
        if (const json* v = member(*p, "k")) c.k = count_value(*v, "params.k");
    }
    if (const json* v = member(doc, "verify")) {
        if (!v->is_object()) throw ConfigError("verify must be an object");
        if (const json* x = member(*v, "V")) c.verify.vertices = count_value(*x, "verify.V");
        if (const json* x = member(*v, "tol")) c.verify.tol = typed<double>(*x, "verify.tol");
        if (const json* x = member(*v, "delta")) c.verify.delta = typed<double>(*x, "verify.delta");
        if (const json* x = member(*v, "apertures")) c.verify.apertures = typed<std::vector<double>>(*x, "verify.apertures");
        if (const json* x = member(*v, "seed")) c.verify.seed = typed<std::uint64_t>(*x, "verify.seed");
    }
    if (const json* o = member(doc, "outputs")) {
        if (!o->is_object()) throw ConfigError("outputs must be an object");
        if (const json* x = member(*o, "field_csv")) c.field_csv = typed<std::string>(*x, "outputs.field_csv");
        if (const json* x = member(*o, "report")) c.report = typed<std::string>(*x, "outputs.report");
        if (const json* g = member(*o, "grid")) {
            if (const json* x = member(*g, "n")) c.grid.n = count_value(*x, "outputs.grid.n");
            if (const json* x = member(*g, "extent")) c.grid.extent = typed<double>(*x, "outputs.grid.extent");
        }
    }

    try {
        require_node_count(c.n, 16, "params.N");
    } catch (const ConfigError&) {
        throw ConfigError("params.N must be a power of two >= 16 (got " + std::to_string(c.n) + ")");
    }
    check_angle_range(c.cut, "params.cut");
    for (std::size_t k = 0; k < c.hom_points.size(); ++k)
        check_angle_range(c.hom_points[k], "params.hom_points[" + std::to_string(k) + "]");
    if (c.hom_coeffs.size() > c.hom_points.size() + 1)
        throw ConfigError("params.hom_coeffs has more entries than params.hom_points + 1");
    if (c.rho_sample < 0.0 || c.rho_sample >= 1.0) throw ConfigError("params.rho_sample must lie in [0, 1)");
    if (c.verify.vertices < 8) throw ConfigError("verify.V must be at least 8");
    if (!(c.verify.tol > 0.0)) throw ConfigError("verify.tol must be positive");
    if (!(c.verify.delta >= 0.0)) throw ConfigError("verify.delta must be non-negative");
    if (c.verify.apertures.empty()) throw ConfigError("verify.apertures must not be empty");
    if (c.grid.n < 2) throw ConfigError("outputs.grid.n must be at least 2");
    if (!(c.grid.extent > 0.0)) throw ConfigError("outputs.grid.extent must be positive");
    for (const auto& name : {c.field_csv, c.report}) {
        if (name.empty() || fs::path(name).has_parent_path())
            throw ConfigError("output names must be plain file names inside --out");
    }
    return c;
}

Problem build_problem(const RunConfig& config) {
    Problem problem;
    problem.neumann = config.problem == "neumann";
    problem.params.hom_coeffs = config.hom_coeffs;
    problem.params.d0 = config.d0;
    problem.params.rho_sample = config.rho_sample;
    for (double a : config.hom_points) problem.params.hom_points.push_back(std::polar(1.0, a));

    if (config.rho.empty()) {
        problem.phi = build_boundary_function(config.phi, config.n, ValueKind::real, boundary_variables(),
                                              [](double t) {
                                                  return std::map<std::string, cplx, std::less<>>{
                                                      {"theta", t}, {"x", std::cos(t)}, {"y", std::sin(t)}};
                                              });
        problem.phi_domain = problem.phi;
        if (config.nu == "normal") {
            problem.nu = disk_normal(config.n, config.cut).underlying;
        } else {
            problem.nu = DirectionField(
                build_boundary_function({{"0", "2*pi", config.nu}}, config.n, ValueKind::complex, boundary_variables(),
                                        [](double t) {
                                            return std::map<std::string, cplx, std::less<>>{
                                                {"theta", t}, {"x", std::cos(t)}, {"y", std::sin(t)}};
                                        }),
                config.cut);
        }
        return problem;
    }

    auto rho_expr = std::make_shared<Expression>(Expression::parse(config.rho, {"a"}));
    RadiusFunction rho = [rho_expr](double a) { return rho_expr->evaluate("a", a).real(); };
    TheodorsenParams tp;
    tp.n = config.n;
    problem.map = std::make_shared<const ConformalMap>(theodorsen_map(rho, tp));
    auto bind = [rho](double t) {
        const double r = rho(t);
        return std::map<std::string, cplx, std::less<>>{{"theta", t}, {"x", r * std::cos(t)}, {"y", r * std::sin(t)}};
    };
    problem.phi_domain = build_boundary_function(config.phi, config.n, ValueKind::real, boundary_variables(), bind);
    problem.phi = pull_back(problem.phi_domain, *problem.map);
    if (config.nu == "normal") {
        problem.nu = map_normal(*problem.map, config.cut);
    } else {
        auto nu_expr = std::make_shared<Expression>(Expression::parse(config.nu, boundary_variables()));
        problem.nu = pull_back_direction(
            [nu_expr](cplx w) {
                return nu_expr->evaluate(
                    std::map<std::string, cplx, std::less<>>{{"theta", wrap_angle(std::arg(w))}, {"x", w.real()}, {"y", w.imag()}});
            },
            *problem.map, config.cut);
    }
    return problem;
}

HarmonicSolution solve_problem(const Problem& problem, const SolverParams& params) {
    if (problem.neumann) {
        if (problem.map) return solve_neumann(problem.phi_domain, problem.map, params, problem.nu.cut());
        return solve_neumann(problem.phi, params, problem.nu.cut());
    }
    if (problem.map) return transplant_solve(problem.map, problem.nu, problem.phi, params);
    return solve_directional(problem.nu, problem.phi, params);
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonclassical Neumann and directional-derivative problems for harmonic functions"};
    std::string config_path;
    std::string out_dir;
    std::optional<std::size_t> n_override;
    std::optional<double> tol_override;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--n", n_override, "number of boundary nodes (power of two)");
    app.add_option("--tol", tol_override, "verification tolerance");
    app.add_option("--seed", seed, "seed for randomized sampling");
    app.add_flag("--quiet", quiet, "suppress the solver trace");
    const std::vector<std::pair<std::string, std::string>> commands{
        {"solve", "solve and write the field CSV"},
        {"verify", "solve, certify boundary behaviour and write the report"},
        {"family", "solve with homogeneous members and write the rank certificate"},
        {"map", "build the conformal map of a starlike domain"}};
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::optional<OutputSet> outputs;
    try {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read configuration " + config_path);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("malformed configuration: ") + e.what());
        }
        if (n_override) doc["params"]["N"] = *n_override;
        if (tol_override) doc["verify"]["tol"] = *tol_override;
        if (seed) doc["verify"]["seed"] = *seed;
        const RunConfig config = parse_config(doc);

        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (!fs::is_directory(out_dir)) throw ConfigError("cannot create output directory " + out_dir);
        DirectoryLock lock(out_dir);
        outputs.emplace(out_dir);
        std::ostringstream sink;
        std::ostream& log = quiet ? sink : out;

        if (command == "map") {
            if (config.rho.empty()) throw ConfigError("map requires a starlike domain");
            const Problem problem = build_problem(config);
            const ConformalMap& map = *problem.map;
            outputs->write("map.csv", [&](std::ostream& os) {
                os.precision(17);
                os << "t,sigma,abs_omega,residual\n";
                for (std::size_t j = 0; j < map.size(); ++j) {
                    const double t = map.sigma().node(j);
                    const cplx w = map(std::polar(1.0, t));
                    os << t << ',' << map.sigma().real(j) << ',' << std::abs(w) << ','
                       << std::abs(std::abs(w) - map.rho()(std::arg(w))) << '\n';
                }
            });
            log << "iterations=" << map.iterations << " residual=" << number_text(map.residual)
                << " min_derivative=" << number_text(map.min_derivative) << '\n';
            return 0;
        }

        const Problem problem = build_problem(config);
        SolverParams params = problem.params;
        if (command == "family") {
            std::vector<cplx> poles = params.hom_points;
            if (poles.empty()) poles = default_hom_points(config.k, singular_angles(problem));
            SolverParams base = params;
            base.hom_points = poles;
            base.hom_coeffs.clear();
            std::vector<HarmonicSolution> family;
            family.push_back(solve_problem(problem, base));
            family.push_back(family.front().with_shift(base.d0 + 1.0));
            for (std::size_t j = 0; j <= poles.size(); ++j) {
                SolverParams member = base;
                member.hom_coeffs.assign(poles.size() + 1, 0.0);
                member.hom_coeffs[j] = 1.0;
                family.push_back(solve_problem(problem, member));
            }
            std::vector<double> avoid = singular_angles(problem);
            for (const cplx& p : poles) avoid.push_back(std::arg(p));
            auto points = certificate_points(std::max<std::size_t>(64, 2 * family.size()), avoid,
                                             seed ? std::optional<std::uint64_t>(*seed) : std::nullopt);
            if (problem.map) {
                for (auto& z : points) z = (*problem.map)(z);
            }
            std::string diagnostic;
            const double sigma_min = dimension_certificate(family, points, &diagnostic);
            for (std::size_t j = 0; j < family.size(); ++j) {
                outputs->write("family_" + std::to_string(j) + ".csv",
                               [&](std::ostream& os) { write_field(os, family[j], config); });
            }
            outputs->write("certificate.txt", [&](std::ostream& os) {
                os.precision(17);
                os << "# config: " << config.to_json().dump() << '\n';
                os << "members=" << family.size() << '\n';
                os << "poles=" << poles.size() << '\n';
                os << "points=" << points.size() << '\n';
                os << "sigma_min=" << sigma_min << '\n';
                if (!diagnostic.empty()) os << "diagnostic=" << diagnostic << '\n';
            });
            log << "members=" << family.size() << " sigma_min=" << number_text(sigma_min) << '\n';
            return 0;
        }

        const HarmonicSolution sol = solve_problem(problem, params);
        trace(log, config, sol);
        outputs->write(config.field_csv, [&](std::ostream& os) { write_field(os, sol, config); });
        if (command == "verify") {
            const VerificationReport report = verify_solution(sol, problem.nu, problem.phi, config.verify);
            outputs->write(config.report,
                           [&](std::ostream& os) { write_report(os, report, config.to_json().dump()); });
            log << "pass_fraction=" << number_text(report.pass_fraction)
                << " converged_fraction=" << number_text(report.converged_fraction) << '\n';
        }
        return 0;
    } catch (const ConfigError& e) {
        if (outputs) outputs->discard();
        err << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        if (outputs) outputs->discard();
        err << "data error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        if (outputs) outputs->discard();
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace hbvp
