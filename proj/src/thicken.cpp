#include "plectic/thicken.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace plectic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// First few terms of a nonzero form, one witness string each.
void add_term_witnesses(VerificationReport& report, const Form& residual, std::size_t limit = 8) {
    std::size_t n = 0;
    for (const auto& [idx, c] : residual.terms()) {
        if (n++ == limit) {
            report.witnesses.push_back("... " + std::to_string(residual.terms().size() - limit) + " more terms");
            break;
        }
        Form single(residual.chart(), residual.degree());
        single.add_term(idx, c);
        report.witnesses.push_back(single.to_string());
    }
}

} // namespace

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<FiberCoordinate> enumerate_fiber_coordinates(std::span<const FrameSlot> slots, std::size_t k) {
    if (k < 2) throw ThickeningError("fiber enumeration needs form degree k >= 2");
    const std::size_t d = slots.size();
    if (k - 1 > d) throw ThickeningError("form degree exceeds chart dimension + 1");
    std::vector<std::size_t> by_pivot(d);
    std::iota(by_pivot.begin(), by_pivot.end(), 0);
    std::stable_sort(by_pivot.begin(), by_pivot.end(),
                     [&](std::size_t a, std::size_t b) { return slots[a].pivot < slots[b].pivot; });
    std::vector<FiberCoordinate> out;
    for (const auto& combo : combinations(d, k - 1)) {
        std::vector<std::size_t> chosen;
        bool has_vertical = false;
        for (auto c : combo) {
            chosen.push_back(by_pivot[c]);
            has_vertical = has_vertical || slots[by_pivot[c]].vertical;
        }
        if (!has_vertical) continue;
        // Vertical slots precede horizontal ones in frame order.
        std::stable_sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
            if (slots[a].vertical != slots[b].vertical) return slots[a].vertical;
            return a < b;
        });
        FiberCoordinate fc{chosen, "p"};
        for (auto s : chosen) fc.name += "_" + slots[s].label;
        out.push_back(std::move(fc));
    }
    return out;
}

SymbolicMatrix Thickening::big_frame_matrix() const {
    const std::size_t d = base_dim();
    const std::size_t n = big_chart->dim();
    SymbolicMatrix m(n, n, n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t s = 0; s < d; ++s) m(i, s) = frame.matrix(i, s).extended(n);
    }
    for (std::size_t j = d; j < n; ++j) m(j, j) = ScalarExpr::constant(n, Rational(1));
    return m;
}

SymbolicMatrix Thickening::big_coframe_matrix() const {
    const std::size_t d = base_dim();
    const std::size_t n = big_chart->dim();
    SymbolicMatrix m(n, n, n);
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t i = 0; i < d; ++i) m(s, i) = frame.inverse(s, i).extended(n);
    }
    for (std::size_t j = d; j < n; ++j) m(j, j) = ScalarExpr::constant(n, Rational(1));
    return m;
}

ChartPtr Thickening::big_label_chart() const {
    std::vector<std::string> names;
    for (const auto& s : frame.slots) names.push_back(s.label);
    for (const auto& f : fibers) names.push_back(f.name);
    return make_chart(big_chart->name + "/frame", std::move(names));
}

Form tautological_form(const ChartPtr& big_chart, const SplitFrame& frame, std::span<const FiberCoordinate> fibers,
                       const CoordinateMap& tau) {
    if (fibers.empty()) throw ThickeningError("no fiber coordinates: the form has a trivial kernel");
    const std::size_t d = frame.chart->dim();
    const std::size_t n = big_chart->dim();
    std::vector<Form> lifted;
    for (const auto& eta : frame.coframe) lifted.push_back(pullback(tau, eta));
    const std::size_t k1 = fibers.front().slots.size();
    Form theta(big_chart, k1);
    for (std::size_t f = 0; f < fibers.size(); ++f) {
        Form monomial = Form::scalar(big_chart, ScalarExpr::variable(n, d + f));
        for (auto s : fibers[f].slots) monomial = wedge(monomial, lifted[s]);
        theta += monomial;
    }
    return theta;
}

Thickening build_thickening(const PreMultisymplecticManifold& m, const SplitFrame& frame) {
    const std::size_t k = m.degree();
    if (k < 3) {
        throw ThickeningError("thickening needs form degree k >= 3; k = " + std::to_string(k) +
                              " is the classical symplectic (Gotay) case, which this construction does not cover");
    }
    if (!same_chart(m.chart(), frame.chart)) throw ThickeningError("frame was built on a different chart");
    const std::size_t d = m.chart()->dim();

    auto fibers = enumerate_fiber_coordinates(frame.slots, k);
    std::vector<std::string> coords = m.chart()->coords;
    for (const auto& f : fibers) {
        if (m.chart()->index_of(f.name)) {
            throw ThickeningError("fiber coordinate name '" + f.name + "' collides with a base coordinate");
        }
        coords.push_back(f.name);
    }
    ChartPtr big = make_chart(m.chart()->name + "~", std::move(coords));
    const std::size_t n = big->dim();

    CoordinateMap tau{big, m.chart(), {}};
    for (std::size_t i = 0; i < d; ++i) tau.components.push_back(ScalarExpr::variable(n, i));
    CoordinateMap zero{m.chart(), big, {}};
    for (std::size_t i = 0; i < d; ++i) zero.components.push_back(ScalarExpr::variable(d, i));
    for (std::size_t j = d; j < n; ++j) zero.components.push_back(ScalarExpr(d));

    Form theta0 = tautological_form(big, frame, fibers, tau);
    Form omega_tilde = pullback(tau, m.omega()) + plectic::d(theta0);
    return Thickening{m, frame, big, std::move(fibers), std::move(tau), std::move(zero), std::move(theta0),
                      std::move(omega_tilde)};
}

Form frame_presentation(const Thickening& t, const Form& alpha) {
    if (!same_chart(alpha.chart(), t.big_chart)) throw ChartMismatch("form does not live on the thickening chart");
    return to_frame_basis(alpha, t.big_label_chart(), t.big_frame_matrix());
}

VerificationReport verify_closed(const Form& omega) {
    auto start = Clock::now();
    VerificationReport report;
    report.check = "closed";
    Form domega = d(omega);
    if (domega.is_zero()) {
        report.verdict = Verdict::Pass;
        report.summary = "d(omega) = 0 symbolically";
    } else {
        report.verdict = Verdict::Fail;
        report.summary = "d(omega) has " + std::to_string(domega.terms().size()) + " nonzero terms";
        add_term_witnesses(report, domega);
    }
    report.seconds = seconds_since(start);
    return report;
}

VerificationReport verify_closed(const Thickening& t) { return verify_closed(t.omega_tilde); }

VerificationReport verify_nondegenerate(const Form& omega, const std::vector<RationalVector>& samples) {
    if (samples.empty()) throw std::invalid_argument("non-degeneracy check needs at least one sample");
    auto start = Clock::now();
    VerificationReport report;
    report.check = "nondegenerate";
    std::size_t used = 0;
    std::size_t failed = 0;
    for (const auto& p : samples) {
        SampleRecord rec;
        rec.point = p;
        if (has_pole_at(omega, p)) {
            rec.skipped = true;
            rec.note = "pole";
            report.samples.push_back(std::move(rec));
            continue;
        }
        ++used;
        rec.vectors = kernel_at(omega, p);
        rec.dimension = rec.vectors.size();
        if (!rec.vectors.empty()) {
            rec.ok = false;
            ++failed;
            std::string w = "kernel of dimension " + std::to_string(rec.vectors.size()) + " at " +
                            vector_to_string(p) + ":";
            for (const auto& v : rec.vectors) w += " " + vector_to_string(v);
            report.witnesses.push_back(std::move(w));
        }
        report.samples.push_back(std::move(rec));
    }
    if (used == 0) {
        report.verdict = Verdict::Fail;
        report.summary = "every sample hit a pole";
        report.witnesses.push_back("no usable samples");
    } else if (failed > 0) {
        report.verdict = Verdict::Fail;
        report.summary = "degenerate at " + std::to_string(failed) + " of " + std::to_string(used) + " samples";
    } else {
        report.verdict = Verdict::Evidence;
        report.summary = "trivial kernel at all " + std::to_string(used) + " samples";
    }
    report.seconds = seconds_since(start);
    return report;
}

VerificationReport verify_nondegenerate(const Thickening& t, const std::vector<RationalVector>& samples) {
    return verify_nondegenerate(t.omega_tilde, samples);
}

VerificationReport verify_zero_section_pullback(const Thickening& t) {
    auto start = Clock::now();
    VerificationReport report;
    report.check = "zero_section_pullback";
    Form residual = pullback(t.zero_section, t.omega_tilde) - t.base.omega();
    if (residual.is_zero()) {
        report.verdict = Verdict::Pass;
        report.summary = "i^* omega_tilde = omega symbolically";
    } else {
        report.verdict = Verdict::Fail;
        report.summary = "i^* omega_tilde - omega = " + residual.to_string();
        add_term_witnesses(report, residual);
    }
    report.seconds = seconds_since(start);
    return report;
}

VerificationReport verify_coisotropic(const Thickening& t, const std::vector<RationalVector>& samples,
                                      std::optional<std::size_t> ell) {
    if (samples.empty()) throw std::invalid_argument("coisotropy check needs at least one sample");
    auto start = Clock::now();
    const std::size_t d = t.base_dim();
    const std::size_t n = t.big_chart->dim();
    const std::size_t l = ell.value_or(t.base.degree() - 1);
    VerificationReport report;
    report.check = "coisotropic";
    std::vector<RationalVector> tangent;
    for (std::size_t i = 0; i < d; ++i) {
        RationalVector e(n);
        e[i] = 1;
        tangent.push_back(std::move(e));
    }
    std::size_t used = 0;
    std::size_t failed = 0;
    for (const auto& p : samples) {
        if (p.size() != n) throw std::invalid_argument("sample has wrong dimension");
        for (std::size_t j = d; j < n; ++j) {
            if (sgn(p[j]) != 0) throw std::invalid_argument("coisotropy sample " + vector_to_string(p) +
                                                            " is off the zero section");
        }
        SampleRecord rec;
        rec.point = p;
        if (has_pole_at(t.omega_tilde, p)) {
            rec.skipped = true;
            rec.note = "pole";
            report.samples.push_back(std::move(rec));
            continue;
        }
        ++used;
        rec.vectors = multisymplectic_orthogonal(t.omega_tilde, p, tangent, l);
        rec.dimension = rec.vectors.size();
        if (!subspace_contained(rec.vectors, tangent, n)) {
            rec.ok = false;
            ++failed;
            std::string w = "orthogonal (ell = " + std::to_string(l) + ") at " + vector_to_string(p) +
                            " leaves the submanifold:";
            for (const auto& v : rec.vectors) {
                if (!subspace_contained({v}, tangent, n)) w += " " + vector_to_string(v);
            }
            report.witnesses.push_back(std::move(w));
        }
        report.samples.push_back(std::move(rec));
    }
    if (used == 0) {
        report.verdict = Verdict::Fail;
        report.summary = "every sample hit a pole";
        report.witnesses.push_back("no usable samples");
    } else if (failed > 0) {
        report.verdict = Verdict::Fail;
        report.summary = std::to_string(l) + "-orthogonal not contained at " + std::to_string(failed) + " of " +
                         std::to_string(used) + " samples";
    } else {
        report.verdict = Verdict::Evidence;
        report.summary = "base is " + std::to_string(l) + "-coisotropic at all " + std::to_string(used) + " samples";
    }
    report.seconds = seconds_since(start);
    return report;
}

std::vector<RationalVector> sample_big_chart(const Thickening& t, Sampler& sampler, std::size_t count) {
    const std::size_t n = t.big_chart->dim();
    const std::size_t d = t.base_dim();
    auto pts = sampler.draw_many(n, count, [&](const RationalVector& p) { return !has_pole_at(t.omega_tilde, p); });
    bool off_section = std::any_of(pts.begin(), pts.end(), [&](const RationalVector& p) {
        return std::any_of(p.begin() + static_cast<std::ptrdiff_t>(d), p.end(),
                           [](const Rational& x) { return sgn(x) != 0; });
    });
    if (!off_section && !pts.empty() && n > d) pts.front()[d] = 1;
    return pts;
}

std::vector<RationalVector> sample_zero_section(const Thickening& t, Sampler& sampler, std::size_t count) {
    const std::size_t n = t.big_chart->dim();
    const std::size_t d = t.base_dim();
    auto lift = [&](RationalVector p) {
        p.resize(n, Rational(0));
        return p;
    };
    std::vector<RationalVector> out;
    for (auto& p : sampler.draw_many(d, count, [&](const RationalVector& p) {
             return !has_pole_at(t.omega_tilde, lift(p));
         })) {
        out.push_back(lift(std::move(p)));
    }
    return out;
}

} // namespace plectic
