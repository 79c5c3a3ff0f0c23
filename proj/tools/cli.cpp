#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <complex>
#include <fstream>
#include <istream>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "framecomp/certificate.hpp"
#include "framecomp/descent.hpp"
#include "framecomp/errors.hpp"
#include "framecomp/fod.hpp"
#include "framecomp/frame.hpp"

namespace framecomp::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResidual = 3;
constexpr int kExitInfeasible = 4;

struct ProblemInstance {
    int d = 0;
    std::optional<Spectrum> lambda;        // ascending
    std::optional<Eigen::MatrixXcd> frame; // columns are the F0 vectors
    std::optional<Spectrum> a;             // descending
    std::optional<Spectrum> mu;            // descending (design / orbit)
    std::string phi = "square";
    std::vector<std::string> norms;
    std::uint64_t seed = 1;
};

std::complex<double> parse_complex(const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw DomainError("complex entries must be numbers or [re, im] pairs");
}

std::vector<double> parse_reals(const json& v, const char* field) {
    if (!v.is_array() || v.empty())
        throw DomainError(std::string(field) + " must be a nonempty array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw DomainError(std::string(field) + " entries must be numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Spectrum load_sorted(const json& v, const char* field, Order order,
                     std::ostream& err) {
    std::vector<double> raw = parse_reals(v, field);
    std::vector<double> sorted = raw;
    if (order == Order::Ascending)
        std::sort(sorted.begin(), sorted.end());
    else
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    if (sorted != raw)
        err << "note: re-sorted " << field << " to the canonical order\n";
    return Spectrum(std::move(sorted), order);
}

ProblemInstance parse_instance(const json& j, std::ostream& err) {
    ProblemInstance inst;
    if (!j.is_object()) throw DomainError("instance must be a JSON object");

    if (j.contains("lambda") && j.contains("frame_F0"))
        throw DomainError("give at most one of lambda / frame_F0");

    if (j.contains("lambda"))
        inst.lambda = load_sorted(j.at("lambda"), "lambda", Order::Ascending, err);

    if (j.contains("frame_F0")) {
        const json& fj = j.at("frame_F0");
        if (!fj.is_array() || fj.empty())
            throw DomainError("frame_F0 must be a nonempty array of vectors");
        const std::size_t dim = fj[0].size();
        Eigen::MatrixXcd F(dim, fj.size());
        for (std::size_t c = 0; c < fj.size(); ++c) {
            if (!fj[c].is_array() || fj[c].size() != dim)
                throw DomainError("frame_F0 vectors must share one dimension");
            for (std::size_t r = 0; r < dim; ++r)
                F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    parse_complex(fj[c][r]);
        }
        inst.frame = std::move(F);
    }

    if (j.contains("d"))
        inst.d = j.at("d").get<int>();
    else if (inst.lambda)
        inst.d = static_cast<int>(inst.lambda->size());
    else if (inst.frame)
        inst.d = static_cast<int>(inst.frame->rows());
    else
        throw DomainError("d is required when neither lambda nor frame_F0 is given");

    if (inst.lambda && static_cast<int>(inst.lambda->size()) != inst.d)
        throw DomainError("lambda length must equal d");
    if (inst.frame && static_cast<int>(inst.frame->rows()) != inst.d)
        throw DomainError("frame_F0 dimension must equal d");
    if (inst.d <= 0) throw DomainError("d must be positive");

    if (j.contains("a")) {
        inst.a = load_sorted(j.at("a"), "a", Order::Descending, err);
        if ((*inst.a)[inst.a->size() - 1] <= 0.0)
            throw DomainError("a entries must be strictly positive");
    }
    if (j.contains("mu"))
        inst.mu = load_sorted(j.at("mu"), "mu", Order::Descending, err);

    if (j.contains("phi")) inst.phi = j.at("phi").get<std::string>();
    if (j.contains("norm")) {
        if (j.at("norm").is_string())
            inst.norms.push_back(j.at("norm").get<std::string>());
        else
            for (const auto& n : j.at("norm")) inst.norms.push_back(n.get<std::string>());
    }
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    return inst;
}

ConvexFn parse_phi(const std::string& spec) {
    if (spec == "square") return ConvexFn::square();
    if (spec == "mse") return ConvexFn::mse();
    if (spec == "exp") return ConvexFn::exponential();
    if (spec.rfind("p:", 0) == 0) return ConvexFn::p_power(std::stod(spec.substr(2)));
    throw DomainError("unknown phi spec: " + spec);
}

UINorm parse_norm(const std::string& spec) {
    if (spec == "fro") return UINorm::frobenius();
    if (spec == "spec") return UINorm::spectral();
    if (spec.rfind("schatten:", 0) == 0)
        return UINorm::schatten(std::stod(spec.substr(9)));
    if (spec.rfind("kyfan:", 0) == 0)
        return UINorm::ky_fan(static_cast<std::size_t>(std::stoul(spec.substr(6))));
    throw DomainError("unknown norm spec: " + spec);
}

HermitianMatrix base_operator(const ProblemInstance& inst) {
    if (inst.frame) return frame_operator(FrameSeq(*inst.frame));
    if (inst.lambda) return HermitianMatrix::diagonal(*inst.lambda);
    return HermitianMatrix::zero(inst.d);
}

json spectrum_json(const Spectrum& s) { return json(s.entries()); }

json frame_json(const FrameSeq& G) {
    json vectors = json::array();
    for (Eigen::Index c = 0; c < G.size(); ++c) {
        json vec = json::array();
        for (Eigen::Index r = 0; r < G.dim(); ++r) {
            const auto z = G.synthesis()(r, c);
            vec.push_back(json::array({z.real(), z.imag()}));
        }
        vectors.push_back(std::move(vec));
    }
    return vectors;
}

Spectrum require_a(const ProblemInstance& inst) {
    if (!inst.a) throw DomainError("instance needs the norm list a");
    return *inst.a;
}

json load_input(const std::string& path, std::istream& in) {
    if (path == "-") return json::parse(in);
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open input file: " + path);
    return json::parse(f);
}

struct CommonOpts {
    std::string input = "-";
    std::string phi;
    std::vector<std::string> norms;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    bool json_only = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("input", opts.input, "instance JSON path, or - for stdin");
    cmd->add_option("--phi", opts.phi, "potential: square | mse | p:<p>");
    cmd->add_option("--norm", opts.norms, "norm: fro | spec | schatten:<p> | kyfan:<j>");
    cmd->add_option("--seed", opts.seed, "RNG seed (overrides the instance)");
    cmd->add_option("--out", opts.out_path, "write the produced frame to this path");
    cmd->add_flag("--json", opts.json_only, "suppress the human-readable summary");
}

ProblemInstance resolve(const CommonOpts& opts, std::istream& in, std::ostream& err) {
    ProblemInstance inst = parse_instance(load_input(opts.input, in), err);
    if (!opts.phi.empty()) inst.phi = opts.phi;
    if (!opts.norms.empty()) inst.norms = opts.norms;
    if (opts.seed) inst.seed = *opts.seed;
    if (inst.norms.empty()) inst.norms.push_back("fro");
    return inst;
}

void write_frame_file(const std::string& path, int d, const FrameSeq& G) {
    if (path.empty()) return;
    json j;
    j["d"] = d;
    j["frame_F0"] = frame_json(G);
    std::ofstream f(path);
    if (!f) throw DomainError("cannot open output file: " + path);
    f << j.dump(2) << "\n";
}

int cmd_spectrum(const ProblemInstance& inst, const CommonOpts& opts,
                 std::ostream& out, std::ostream& err) {
    const Spectrum a = require_a(inst);
    const HermitianMatrix S0 = base_operator(inst);
    const Spectrum lambda = S0.eigenvalues_asc();

    const OptimalSpectrum opt = optimal_spectrum(lambda, a);
    const FeasibilityReport rep = is_feasible_pair(lambda, a);
    const ConvexFn phi = parse_phi(inst.phi);

    json j;
    j["nu_op"] = spectrum_json(opt.nu_op_desc);
    j["nu_op_unsorted"] = spectrum_json(opt.nu_op);
    j["s_indices"] = opt.s_indices;
    j["c_consts"] = opt.c_consts;
    j["q"] = opt.q;
    j["s_star"] = opt.s_star;
    j["feasible"] = rep.feasible;
    if (rep.violated_prefix) j["violated_prefix"] = *rep.violated_prefix;
    j["min_potential"][inst.phi] = trace_phi(sort_desc(opt.nu_op), phi);
    out << j.dump() << "\n";

    if (!opts.json_only) {
        err << "optimal spectrum (desc):";
        for (double v : opt.nu_op_desc.entries()) err << " " << v;
        err << "\n  s* = " << opt.s_star << ", q = " << opt.q
            << ", feasible pair: " << (rep.feasible ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int cmd_complete(const ProblemInstance& inst, const CommonOpts& opts,
                 std::ostream& out, std::ostream& err) {
    const Spectrum a = require_a(inst);
    const HermitianMatrix S0 = base_operator(inst);

    const auto [G, opt] = optimal_completion(S0, a);
    const HermitianMatrix SF(S0.matrix() + frame_operator(G).matrix());
    const Spectrum achieved = SF.eigenvalues_desc();

    double spec_resid = 0.0;
    for (std::size_t i = 0; i < achieved.size(); ++i)
        spec_resid = std::max(spec_resid, std::abs(achieved[i] - opt.nu_op_desc[i]));
    double norm_resid = 0.0;
    const Spectrum norms = G.norm_squares();
    for (std::size_t i = 0; i < norms.size(); ++i)
        norm_resid = std::max(norm_resid, std::abs(norms[i] - a[i]));

    json j;
    j["frame"] = frame_json(G);
    j["d"] = inst.d;
    j["achieved_spectrum"] = spectrum_json(achieved);
    j["nu_op"] = spectrum_json(opt.nu_op_desc);
    j["spectrum_residual"] = spec_resid;
    j["norm_residual"] = norm_resid;
    out << j.dump() << "\n";

    write_frame_file(opts.out_path, inst.d, G);
    if (!opts.json_only) {
        err << "completion of " << a.size() << " vectors, spectrum residual "
            << spec_resid << ", norm residual " << norm_resid << "\n";
    }
    return spec_resid <= 1e-6 ? kExitOk : kExitResidual;
}

int cmd_fod(const ProblemInstance& inst, const CommonOpts& opts,
            std::ostream& out, std::ostream& err) {
    const Spectrum a = require_a(inst);
    const HermitianMatrix S0 = base_operator(inst);

    json j;
    FodSolution sol;
    bool first = true;
    for (const std::string& nspec : inst.norms) {
        const UINorm norm = parse_norm(nspec);
        FodSolution s = fod_minimum(S0, a, norm);
        j["min_value"][nspec] = s.min_value;
        j["achieved_value"][nspec] = s.achieved_value;
        if (first) {
            sol = std::move(s);
            first = false;
        }
    }
    j["delta"] = spectrum_json(sol.delta);
    j["commutator_residual"] = sol.commutator_residual;
    j["frame"] = frame_json(sol.G_op);
    out << j.dump() << "\n";

    write_frame_file(opts.out_path, inst.d, sol.G_op);
    if (!opts.json_only) {
        err << "fod minimum per norm:";
        for (const auto& [key, val] : j["min_value"].items())
            err << " " << key << "=" << val.get<double>();
        err << "\n";
    }
    return kExitOk;
}

int cmd_verify(const ProblemInstance& inst, const CommonOpts& opts, bool orbit,
               int restarts, int max_iters, double gap_tol,
               const std::string& traj_path, std::ostream& out,
               std::ostream& err) {
    const ConvexFn phi = parse_phi(inst.phi);
    DescentConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = inst.seed;

    DescentReport rep;
    if (orbit) {
        if (!inst.mu) throw DomainError("orbit mode needs mu in the instance");
        rep = descend_orbit(base_operator(inst), *inst.mu, phi, cfg,
                            !traj_path.empty());
    } else {
        rep = descend_Ta(base_operator(inst), require_a(inst), phi, cfg,
                         !traj_path.empty());
    }

    if (!traj_path.empty()) {
        std::ofstream f(traj_path);
        if (!f) throw DomainError("cannot open trajectory file: " + traj_path);
        f << "restart,iter,value\n";
        for (const auto& p : rep.trajectory)
            f << p.restart << "," << p.iter << "," << p.value << "\n";
    }

    const double gap_scale = std::max(1.0, std::abs(rep.global_value));
    double max_gap = 0.0;
    int converged = 0;
    json finals = json::array();
    for (const auto& r : rep.restarts) {
        finals.push_back(r.final_value);
        if (r.converged) {
            ++converged;
            max_gap = std::max(max_gap, r.gap);
        }
    }
    const bool pass = converged > 0 && max_gap <= gap_tol * gap_scale;

    json j;
    j["mode"] = orbit ? "orbit" : "completion";
    j["global_value"] = rep.global_value;
    j["best_value"] = rep.final_value;
    j["gap"] = rep.gap;
    j["max_converged_gap"] = max_gap;
    j["converged_restarts"] = converged;
    j["restarts"] = rep.restarts.size();
    j["per_restart_final"] = finals;
    j["pass"] = pass;
    out << j.dump() << "\n";

    if (!opts.json_only) {
        err << (orbit ? "orbit" : "completion") << " descent: " << converged << "/"
            << rep.restarts.size() << " converged, global " << rep.global_value
            << ", max converged gap " << max_gap << " -> "
            << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitResidual;
}

int cmd_design(const ProblemInstance& inst, const CommonOpts& opts,
               std::ostream& out, std::ostream& err) {
    const Spectrum a = require_a(inst);
    if (!inst.mu) throw DomainError("design needs the target spectrum mu");

    const FrameSeq G = schur_horn_design(*inst.mu, a, inst.d);
    const Spectrum achieved = frame_operator(G).eigenvalues_desc();

    json j;
    j["frame"] = frame_json(G);
    j["d"] = inst.d;
    j["achieved_spectrum"] = spectrum_json(achieved);
    j["norm_squares"] = spectrum_json(G.norm_squares());
    out << j.dump() << "\n";

    write_frame_file(opts.out_path, inst.d, G);
    if (!opts.json_only)
        err << "designed " << a.size() << " vectors in dimension " << inst.d << "\n";
    return kExitOk;
}

int cmd_potential(const ProblemInstance& inst, const CommonOpts& opts,
                  std::ostream& out, std::ostream& err) {
    const HermitianMatrix S0 = base_operator(inst);
    const ConvexFn phi = parse_phi(inst.phi);

    json j;
    j["spectrum"] = spectrum_json(S0.eigenvalues_desc());
    j["potential"][inst.phi] = trace_phi(S0, phi);
    out << j.dump() << "\n";

    if (!opts.json_only)
        err << "tr " << inst.phi << "(S) = " << j["potential"][inst.phi].get<double>()
            << "\n";
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"optimal frame completions with prescribed norms"};
    app.require_subcommand(1);

    CommonOpts spectrum_opts, complete_opts, fod_opts, verify_opts, design_opts,
        potential_opts;
    bool orbit = false;
    int restarts = 20;
    int max_iters = 5000;
    double gap_tol = 1e-5;
    std::string traj_path;

    add_common(app.add_subcommand("spectrum", "optimal completion spectrum"),
               spectrum_opts);
    add_common(app.add_subcommand("complete", "construct an optimal completion"),
               complete_opts);
    add_common(app.add_subcommand("fod", "minimal frame operator distance"), fod_opts);
    CLI::App* verify = app.add_subcommand("verify", "multi-start descent check");
    add_common(verify, verify_opts);
    verify->add_flag("--orbit", orbit, "descend the unitary orbit of mu instead");
    verify->add_option("--restarts", restarts, "number of random restarts");
    verify->add_option("--max-iters", max_iters, "iteration cap per restart");
    verify->add_option("--gap-tol", gap_tol, "relative pass threshold on the gap");
    verify->add_option("--trajectories", traj_path, "write per-iteration CSV here");
    add_common(app.add_subcommand("design", "frame with prescribed norms and spectrum"),
               design_opts);
    add_common(app.add_subcommand("potential", "convex potential of a frame"),
               potential_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (app.got_subcommand("spectrum"))
            return cmd_spectrum(resolve(spectrum_opts, in, err), spectrum_opts, out, err);
        if (app.got_subcommand("complete"))
            return cmd_complete(resolve(complete_opts, in, err), complete_opts, out, err);
        if (app.got_subcommand("fod"))
            return cmd_fod(resolve(fod_opts, in, err), fod_opts, out, err);
        if (app.got_subcommand("verify"))
            return cmd_verify(resolve(verify_opts, in, err), verify_opts, orbit,
                              restarts, max_iters, gap_tol, traj_path, out, err);
        if (app.got_subcommand("design"))
            return cmd_design(resolve(design_opts, in, err), design_opts, out, err);
        if (app.got_subcommand("potential"))
            return cmd_potential(resolve(potential_opts, in, err), potential_opts, out,
                                 err);
    } catch (const InfeasibleDesignError& e) {
        err << "infeasible design: " << e.what() << " (violated prefix "
            << e.violated_prefix() << ")\n";
        return kExitInfeasible;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const LengthMismatchError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitResidual;
    }
    return kExitInput;
}

} // namespace framecomp::cli
