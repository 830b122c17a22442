#include "plectic/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "plectic/parse.hpp"

namespace plectic {

using nlohmann::json;

namespace {

struct Options {
    std::string spec_path;
    bool json = false;
    std::string emit;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> ell;
    std::string section;
    bool symbolic = false;
    std::string basis = "frame";
    std::string submanifold;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json vector_json(const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json sampling_json(const SamplingOptions& s) {
    return {{"count", s.count}, {"seed", s.seed}, {"coordinate_range", {s.lo, s.hi}}};
}

/// Shared output state for one command run.
class Session {
public:
    Session(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

    void header(const std::string& command, const Model& model, const std::optional<SamplingOptions>& sampling) {
        doc_["command"] = command;
        doc_["spec"] = model.spec.name;
        doc_["coordinates"] = model.spec.coordinates;
        doc_["degree"] = model.spec.degree;
        if (sampling) doc_["sampling"] = sampling_json(*sampling);
        if (opt_.json) return;
        out_ << "spec: " << model.spec.name << " (" << model.spec.coordinates.size() << " coordinates, degree "
             << model.spec.degree << ")\n";
        if (sampling) {
            out_ << "sampling: " << sampling->count << " points, seed " << sampling->seed << ", range [" << sampling->lo
                 << ", " << sampling->hi << "]\n";
        }
    }

    void info(const std::string& key, json value, const std::string& text) {
        doc_["info"][key] = std::move(value);
        if (!opt_.json) out_ << text << "\n";
    }

    void report(const VerificationReport& r, bool per_sample_dims = false) {
        doc_["reports"].push_back(report_to_json(r));
        failed_ = failed_ || !r.passed();
        if (opt_.json) return;
        out_ << "[" << to_string(r.verdict) << "] " << r.check << ": " << r.summary;
        if (r.verdict != Verdict::Evidence || r.samples.empty()) {
            out_ << " (" << std::fixed << std::setprecision(3) << r.seconds << " s)";
            out_.unsetf(std::ios::floatfield);
        }
        out_ << "\n";
        for (const auto& w : r.witnesses) out_ << "  witness: " << w << "\n";
        if (per_sample_dims) {
            for (std::size_t i = 0; i < r.samples.size(); ++i) {
                const auto& s = r.samples[i];
                out_ << "  sample " << i + 1 << " " << vector_to_string(s.point) << ": ";
                if (s.skipped) out_ << "skipped (" << s.note << ")";
                else out_ << "dim " << *s.dimension;
                out_ << "\n";
            }
        }
    }

    void note_failure() { failed_ = true; }

    int finish() {
        doc_["status"] = failed_ ? "fail" : "pass";
        if (opt_.json) out_ << doc_.dump(2) << "\n";
        return failed_ ? ExitFail : ExitPass;
    }

private:
    const Options& opt_;
    std::ostream& out_;
    json doc_ = json::object();
    bool failed_ = false;
};

Model load_model(const Options& opt) {
    ManifoldSpec spec = load_spec(opt.spec_path);
    try {
        return build_model(spec);
    } catch (const SpecError& e) {
        throw SpecError(opt.spec_path + ": " + e.what());
    }
}

SamplingOptions sampling_for(const Options& opt, const ManifoldSpec& spec) {
    return resolve_sampling(spec, opt.samples, opt.seed, std::getenv("PLECTIC_SEED"));
}

std::vector<RationalVector> draw_points(const Form& omega, const SamplingOptions& s) {
    Sampler sampler(s);
    return sampler.draw_many(omega.chart()->dim(), s.count,
                             [&](const RationalVector& p) { return !has_pole_at(omega, p); });
}

std::string present(const Form& alpha, const std::optional<SplitFrame>& frame, const Options& opt) {
    if (!frame || opt.basis == "dx") return alpha.to_string();
    return to_frame_basis(alpha, *frame).to_string(alpha.chart()->coords);
}

int cmd_check(const Options& opt, std::ostream& out) {
    Model model = load_model(opt);
    SamplingOptions sampling = sampling_for(opt, model.spec);
    Session session(opt, out);
    session.header("check", model, sampling);

    VerificationReport closed = verify_closed(model.omega);
    session.report(closed);
    std::optional<SplitFrame> frame;
    if (closed.passed() && model.spec.frame) {
        PreMultisymplecticManifold m(model.omega);
        frame = build_model_frame(model, m);
    }
    session.info("omega", present(model.omega, frame, opt),
                 "omega = " + present(model.omega, frame, opt) +
                     (frame && opt.basis != "dx" ? "   [coframe basis]" : ""));

    auto points = draw_points(model.omega, sampling);
    if (points.empty()) throw InputError("no pole-free sample points found");
    session.report(verify_constant_rank(model.omega, points), true);
    return session.finish();
}

int cmd_thicken(const Options& opt, std::ostream& out) {
    Model model = load_model(opt);
    SamplingOptions sampling = sampling_for(opt, model.spec);
    Session session(opt, out);
    session.header("thicken", model, sampling);
    if (!model.spec.frame) throw SpecError(opt.spec_path + ": thicken needs a frame block");

    VerificationReport base_closed = verify_closed(model.omega);
    if (!base_closed.passed()) {
        base_closed.check = "base_closed";
        session.report(base_closed);
        return session.finish();
    }
    PreMultisymplecticManifold m(model.omega);
    SplitFrame frame = build_model_frame(model, m);
    Thickening t = build_thickening(m, frame);

    std::vector<std::string> fiber_names;
    for (const auto& f : t.fibers) fiber_names.push_back(f.name);
    session.info("dimension", t.big_chart->dim(),
                 "thickened chart: " + std::to_string(t.big_chart->dim()) + " coordinates (" +
                     std::to_string(t.base_dim()) + " base + " + std::to_string(t.fiber_count()) + " fiber)");
    std::string joined;
    for (const auto& n : fiber_names) joined += (joined.empty() ? "" : ", ") + n;
    session.info("fiber_coordinates", fiber_names, "fiber coordinates: " + joined);

    const bool framed = opt.basis != "dx";
    auto show = [&](const Form& alpha) {
        return framed ? frame_presentation(t, alpha).to_string(t.big_chart->coords) : alpha.to_string();
    };
    session.info("basis", framed ? "frame" : "dx",
                 std::string("basis: ") + (framed ? "coframe monomials, d(label) is the coframe element dual to that frame field" : "coordinate differentials"));
    session.info("theta0", show(t.theta0), "theta0 = " + show(t.theta0));
    session.info("omega_tilde", show(t.omega_tilde), "omega_tilde = " + show(t.omega_tilde));

    session.report(verify_closed(t));
    Sampler sampler(sampling);
    auto big = sample_big_chart(t, sampler, sampling.count);
    if (big.empty()) throw InputError("no pole-free sample points found");
    session.report(verify_nondegenerate(t, big));
    session.report(verify_zero_section_pullback(t));
    auto zero = sample_zero_section(t, sampler, sampling.count);
    if (zero.empty()) throw InputError("no pole-free zero-section points found");
    if (opt.ell && *opt.ell == 0) throw InputError("--ell must be at least 1");
    session.report(verify_coisotropic(t, zero, opt.ell));

    if (!opt.emit.empty()) {
        save_spec(thickened_spec(model.spec, t), opt.emit);
        session.info("emitted", opt.emit, "wrote " + opt.emit);
    }
    return session.finish();
}

int cmd_orthogonal(const Options& opt, std::ostream& out) {
    Model model = load_model(opt);
    SamplingOptions sampling = sampling_for(opt, model.spec);
    Session session(opt, out);
    session.header("orthogonal", model, sampling);
    if (opt.submanifold.empty()) throw InputError("orthogonal needs --submanifold, e.g. --submanifold x5=0");
    auto constraints = parse_submanifold(opt.submanifold, *model.chart);
    const std::size_t ell = opt.ell.value_or(model.spec.degree > 1 ? model.spec.degree - 1 : 1);
    if (ell == 0) throw InputError("--ell must be at least 1");
    const std::size_t dim = model.chart->dim();

    std::vector<bool> fixed(dim, false);
    for (const auto& [i, v] : constraints) fixed[i] = true;
    std::vector<RationalVector> tangent;
    for (std::size_t i = 0; i < dim; ++i) {
        if (fixed[i]) continue;
        RationalVector e(dim);
        e[i] = 1;
        tangent.push_back(std::move(e));
    }
    session.info("submanifold_dimension", tangent.size(),
                 "submanifold: " + opt.submanifold + " (dimension " + std::to_string(tangent.size()) + "), ell = " +
                     std::to_string(ell));

    Sampler sampler(sampling);
    auto on_n = [&](RationalVector p) {
        for (const auto& [i, v] : constraints) p[i] = v;
        return p;
    };
    auto points = sampler.draw_many(dim, sampling.count,
                                    [&](const RationalVector& p) { return !has_pole_at(model.omega, on_n(p)); });
    if (points.empty()) throw InputError("no pole-free sample points found");

    auto start = std::chrono::steady_clock::now();
    VerificationReport r;
    r.check = "coisotropic";
    std::size_t failed = 0;
    for (auto& raw : points) {
        SampleRecord rec;
        rec.point = on_n(raw);
        rec.vectors = multisymplectic_orthogonal(model.omega, rec.point, tangent, ell);
        rec.dimension = rec.vectors.size();
        rec.ok = subspace_contained(rec.vectors, tangent, dim);
        if (!rec.ok) {
            ++failed;
            if (r.witnesses.size() < 5) {
                std::string w = "orthogonal at " + vector_to_string(rec.point) + " has dimension " +
                                std::to_string(rec.vectors.size()) + ", not inside the tangent space";
                r.witnesses.push_back(std::move(w));
            }
        }
        r.samples.push_back(std::move(rec));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failed) {
        r.verdict = Verdict::Fail;
        r.summary = "not " + std::to_string(ell) + "-coisotropic: orthogonal leaves the tangent space at " +
                    std::to_string(failed) + " of " + std::to_string(r.samples.size()) + " samples";
    } else {
        r.verdict = Verdict::Evidence;
        r.summary = std::to_string(ell) + "-coisotropic: orthogonal contained at all " +
                    std::to_string(r.samples.size()) + " samples";
    }
    session.report(r);
    if (!opt.json) {
        for (std::size_t i = 0; i < r.samples.size(); ++i) {
            const auto& s = r.samples[i];
            out << "  sample " << i + 1 << " " << vector_to_string(s.point) << ": dim " << *s.dimension
                << (s.ok ? ", contained" : ", NOT contained") << "\n";
            for (const auto& v : s.vectors) out << "    " << vector_to_string(v) << "\n";
        }
    }
    return session.finish();
}

int cmd_eom(const Options& opt, std::ostream& out) {
    Model model = load_model(opt);
    Session session(opt, out);
    session.header("eom", model, std::nullopt);
    if (opt.symbolic == !opt.section.empty()) throw InputError("eom needs exactly one of --symbolic or --section");
    FiberedChart f = build_model_fibration(model);

    if (opt.symbolic) {
        EOMSystem sys = eom_symbolic_system(model.omega, f);
        const auto& names = sys.jets.chart->coords;
        json residuals = json::array();
        std::string text = "residuals (chi^*(i_V omega), coefficient of the base volume form):";
        for (const auto& r : sys.residuals) {
            std::string c = r.coefficient.to_string(names);
            residuals.push_back({{"direction", r.direction}, {"auxiliary", r.auxiliary}, {"residual", c}});
            text += "\n  " + r.direction + (r.auxiliary ? " [auxiliary]" : "") + ": " + c;
        }
        session.info("residuals", residuals, text);
        json equations = json::array();
        text = "system (auxiliary fields frozen at 0):";
        for (auto kind : {EquationKind::Physical, EquationKind::Derived, EquationKind::Obstruction,
                          EquationKind::Constraint}) {
            auto eqs = sys.of_kind(kind);
            if (eqs.empty()) continue;
            text += "\n  " + to_string(kind) + ":";
            for (const auto* eq : eqs) {
                equations.push_back({{"kind", to_string(kind)}, {"direction", eq->direction}, {"equation", sys.format(eq->lhs)}});
                text += "\n    " + sys.format(eq->lhs) + "   [" + eq->direction + "]";
            }
        }
        if (sys.equations.empty()) text += "\n  (empty)";
        session.info("equations", equations, text);
        return session.finish();
    }

    Section chi = load_section(opt.section, f);
    auto start = std::chrono::steady_clock::now();
    EOMResidual res = eom_residual(model.omega, f, chi);
    json per = json::array();
    std::string text = "residuals:";
    VerificationReport r;
    r.check = "eom_residual";
    for (const auto& d : res.directions) {
        std::string c = d.coefficient.to_string(f.base_chart->coords);
        per.push_back({{"direction", d.direction}, {"auxiliary", d.auxiliary}, {"residual", c}});
        text += "\n  " + d.direction + (d.auxiliary ? " [auxiliary]" : "") + ": " + c;
        if (!d.auxiliary && !d.coefficient.is_zero()) r.witnesses.push_back(d.direction + ": " + c);
    }
    session.info("residuals", per, text);
    r.verdict = res.physical_zero() ? Verdict::Pass : Verdict::Fail;
    r.summary = res.physical_zero() ? "zero residual along every physical direction"
                                    : "nonzero residual along " + std::to_string(r.witnesses.size()) + " physical directions";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    session.report(r);
    return session.finish();
}

} // namespace

SamplingOptions resolve_sampling(const ManifoldSpec& spec, std::optional<std::size_t> count_flag,
                                 std::optional<std::uint64_t> seed_flag, const char* env_seed) {
    SamplingOptions s;
    if (spec.samples) {
        if (spec.samples->count) s.count = *spec.samples->count;
        if (spec.samples->seed) s.seed = *spec.samples->seed;
        if (spec.samples->coordinate_range) {
            s.lo = spec.samples->coordinate_range->first;
            s.hi = spec.samples->coordinate_range->second;
        }
    }
    if (env_seed && *env_seed) {
        std::string text(env_seed);
        if (!std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
            text.size() > 19) {
            throw InputError("PLECTIC_SEED must be a non-negative integer, got '" + text + "'");
        }
        s.seed = std::stoull(text);
    }
    if (seed_flag) s.seed = *seed_flag;
    if (count_flag) {
        if (*count_flag == 0) throw InputError("--samples must be positive");
        s.count = *count_flag;
    }
    return s;
}

std::vector<std::pair<std::size_t, Rational>> parse_submanifold(const std::string& text, const Chart& chart) {
    std::vector<std::pair<std::size_t, Rational>> out;
    std::stringstream ss(text);
    std::string item;
    std::vector<bool> seen(chart.dim(), false);
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("submanifold constraint '" + item + "' is not of the form coord=value");
        std::string name = item.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
        auto idx = chart.index_of(name);
        if (!idx) throw InputError("submanifold constraint names unknown coordinate '" + name + "'");
        if (seen[*idx]) throw InputError("submanifold constrains '" + name + "' twice");
        seen[*idx] = true;
        ScalarExpr value;
        try {
            value = parse_expr(item.substr(eq + 1), {});
        } catch (const ParseError& e) {
            throw InputError("submanifold value for '" + name + "': " + e.what());
        }
        out.emplace_back(*idx, value.constant_value());
    }
    if (out.empty()) throw InputError("submanifold needs at least one constraint");
    return out;
}

json report_to_json(const VerificationReport& r) {
    json j;
    j["check"] = r.check;
    j["verdict"] = to_string(r.verdict);
    j["summary"] = r.summary;
    j["witnesses"] = r.witnesses;
    if (r.seed) j["seed"] = *r.seed;
    json samples = json::array();
    for (const auto& s : r.samples) {
        json e;
        e["point"] = vector_json(s.point);
        if (s.skipped) {
            e["skipped"] = true;
            e["note"] = s.note;
        } else {
            e["ok"] = s.ok;
            if (s.dimension) e["dimension"] = *s.dimension;
            json vs = json::array();
            for (const auto& v : s.vectors) vs.push_back(vector_json(v));
            e["vectors"] = vs;
        }
        samples.push_back(std::move(e));
    }
    j["samples"] = samples;
    return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact exterior calculus for pre-multisymplectic manifolds and their thickenings", "plectic"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("spec", opt.spec_path, "Manifold spec (JSON)")->required();
        sub->add_flag("--json", opt.json, "Emit a machine-readable JSON report");
        sub->add_option("--samples", opt.samples, "Number of sample points (default 50)");
        sub->add_option("--seed", opt.seed, "Sampling seed (overrides PLECTIC_SEED and the spec)");
        sub->add_option("--monomial-basis", opt.basis, "Presentation basis for forms")
            ->check(CLI::IsMember({"dx", "frame"}));
    };
    auto* check = app.add_subcommand("check", "Closedness and kernel dimension of the spec's form");
    common(check);
    auto* thicken = app.add_subcommand("thicken", "Build the multisymplectic thickening and verify it");
    common(thicken);
    thicken->add_option("--emit", opt.emit, "Write the thickened manifold as a spec");
    thicken->add_option("--ell", opt.ell, "Coisotropy order for the zero section (default k-1)");
    auto* orthogonal = app.add_subcommand("orthogonal", "ell-orthogonal of a coordinate submanifold");
    common(orthogonal);
    orthogonal->add_option("--submanifold", opt.submanifold, "Constraints such as x5=0,x6=0");
    orthogonal->add_option("--ell", opt.ell, "Order of the orthogonal (default k-1)");
    auto* eom = app.add_subcommand("eom", "Equations of motion of sections over the fibration base");
    common(eom);
    eom->add_option("--section", opt.section, "Section file: fiber coordinate -> expression in base coordinates");
    eom->add_flag("--symbolic", opt.symbolic, "Formal section with jet variables");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return ExitInput;
    }

    try {
        if (*check) return cmd_check(opt, out);
        if (*thicken) return cmd_thicken(opt, out);
        if (*orthogonal) return cmd_orthogonal(opt, out);
        return cmd_eom(opt, out);
    } catch (const PoleError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        // Frame, thickening, field-theory and chart errors.
        err << "error: " << e.what() << "\n";
    } catch (const std::runtime_error& e) {
        // Spec, parse and input errors.
        err << "error: " << e.what() << "\n";
    }
    return ExitInput;
}

} // namespace plectic
