#include "plectic/splitting.hpp"

#include <set>

namespace plectic {

PreMultisymplecticManifold::PreMultisymplecticManifold(Form omega) : omega_(std::move(omega)) {
    if (omega_.degree() == 0) throw std::invalid_argument("a pre-multisymplectic form needs degree >= 1");
    Form domega = d(omega_);
    if (!domega.is_zero()) {
        throw std::invalid_argument("form is not closed: d(omega) = " + domega.to_string());
    }
}

const VectorField& SplitFrame::field(std::size_t slot) const {
    return slot < vertical.size() ? vertical.at(slot) : horizontal.at(slot - vertical.size());
}

ChartPtr SplitFrame::label_chart() const {
    std::vector<std::string> names;
    for (const auto& s : slots) names.push_back(s.label);
    return make_chart(chart->name + "/frame", std::move(names));
}

std::vector<RationalVector> kernel_at(const Form& omega, std::span<const Rational> point) {
    return kernel_basis(evaluate_at(omega, point).contraction_matrix());
}

std::vector<RationalVector> kernel_at(const PreMultisymplecticManifold& m, std::span<const Rational> point) {
    return kernel_at(m.omega(), point);
}

VerificationReport verify_constant_rank(const PreMultisymplecticManifold& m,
                                        const std::vector<RationalVector>& samples) {
    return verify_constant_rank(m.omega(), samples);
}

VerificationReport verify_constant_rank(const Form& omega, const std::vector<RationalVector>& samples) {
    if (samples.empty()) throw std::invalid_argument("constant-rank check needs at least one sample");
    VerificationReport report;
    report.check = "constant_rank";
    std::optional<std::size_t> first_dim;
    std::size_t first_at = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        SampleRecord rec;
        rec.point = samples[i];
        if (has_pole_at(omega, samples[i])) {
            rec.skipped = true;
            rec.note = "pole";
            report.samples.push_back(std::move(rec));
            continue;
        }
        rec.vectors = kernel_at(omega, samples[i]);
        rec.dimension = rec.vectors.size();
        if (!first_dim) {
            first_dim = rec.dimension;
            first_at = i;
        } else if (*first_dim != *rec.dimension) {
            rec.ok = false;
            report.verdict = Verdict::Fail;
            report.witnesses.push_back("kernel dimension " + std::to_string(*rec.dimension) + " at " +
                                       vector_to_string(samples[i]) + " but " + std::to_string(*first_dim) +
                                       " at " + vector_to_string(samples[first_at]));
        }
        report.samples.push_back(std::move(rec));
    }
    if (!first_dim) {
        report.verdict = Verdict::Fail;
        report.witnesses.push_back("every sample hit a pole");
        report.summary = "no usable samples";
        return report;
    }
    if (report.verdict != Verdict::Fail) {
        report.verdict = Verdict::Evidence;
        report.summary = "kernel dimension " + std::to_string(*first_dim) + " at all usable samples";
    } else {
        report.summary = "kernel dimension varies";
    }
    return report;
}

namespace {

std::vector<FrameSlot> greedy_slots(const ChartPtr& chart, const std::vector<VectorField>& fields, std::size_t r) {
    std::vector<FrameSlot> slots;
    std::set<std::size_t> claimed;
    std::set<std::string> names;
    for (std::size_t s = 0; s < fields.size(); ++s) {
        FrameSlot slot;
        slot.vertical = s < r;
        bool found = false;
        for (std::size_t i = 0; i < chart->dim(); ++i) {
            if (fields[s].components[i].is_zero() || claimed.count(i)) continue;
            claimed.insert(i);
            slot.label = chart->coords[i];
            slot.pivot = i;
            found = true;
            break;
        }
        if (!found) {
            slot.label = (slot.vertical ? "v" : "h") + std::to_string(slot.vertical ? s + 1 : s - r + 1);
            slot.pivot = chart->dim() + s;
        }
        while (!names.insert(slot.label).second) slot.label += "_";
        slots.push_back(std::move(slot));
    }
    return slots;
}

} // namespace

SplitFrame build_split_frame(const PreMultisymplecticManifold& m, std::vector<VectorField> vertical,
                             std::vector<VectorField> horizontal, std::optional<std::vector<std::string>> labels) {
    const ChartPtr& chart = m.chart();
    const std::size_t dim = chart->dim();
    if (vertical.size() + horizontal.size() != dim) {
        throw FrameError("frame has " + std::to_string(vertical.size() + horizontal.size()) +
                         " fields but the chart has dimension " + std::to_string(dim));
    }
    std::vector<VectorField> fields = vertical;
    fields.insert(fields.end(), horizontal.begin(), horizontal.end());
    for (const auto& f : fields) {
        if (!same_chart(f.chart, chart) || f.components.size() != dim) {
            throw FrameError("frame field does not live on the manifold chart");
        }
    }
    for (std::size_t a = 0; a < vertical.size(); ++a) {
        Form residual = interior(vertical[a], m.omega());
        if (!residual.is_zero()) {
            throw FrameError("vertical field " + std::to_string(a + 1) + " (" + vertical[a].to_string() +
                             ") is not in the kernel: i_V omega = " + residual.to_string());
        }
    }

    SplitFrame frame;
    frame.chart = chart;
    frame.matrix = SymbolicMatrix(dim, dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        for (std::size_t i = 0; i < dim; ++i) frame.matrix(i, s) = fields[s].components[i];
    }
    try {
        frame.inverse = invert(frame.matrix);
    } catch (const SingularMatrixError&) {
        throw FrameError("frame fields are not independent (frame matrix is singular)");
    }
    frame.vertical = std::move(vertical);
    frame.horizontal = std::move(horizontal);
    frame.slots = greedy_slots(chart, fields, frame.vertical.size());
    if (labels) {
        if (labels->size() != dim) throw FrameError("label count does not match frame size");
        std::set<std::string> seen;
        for (std::size_t s = 0; s < dim; ++s) {
            if (!seen.insert((*labels)[s]).second) throw FrameError("duplicate frame label '" + (*labels)[s] + "'");
            frame.slots[s].label = (*labels)[s];
        }
    }
    for (std::size_t s = 0; s < dim; ++s) {
        Form eta(chart, 1);
        for (std::size_t i = 0; i < dim; ++i) eta.add_term({i}, frame.inverse(s, i));
        frame.coframe.push_back(std::move(eta));
    }
    return frame;
}

Form to_frame_basis(const Form& alpha, const ChartPtr& frame_chart, const SymbolicMatrix& frame_matrix) {
    const std::size_t dim = alpha.chart()->dim();
    if (frame_chart->dim() != dim || frame_matrix.rows() != dim || frame_matrix.cols() != dim) {
        throw std::invalid_argument("frame does not match the form's chart");
    }
    // dq^i = sum_s F^i_s eta^s.
    std::vector<std::vector<ScalarExpr>> jac(dim);
    std::vector<ScalarExpr> ident;
    for (std::size_t i = 0; i < dim; ++i) {
        ident.push_back(ScalarExpr::variable(dim, i));
        for (std::size_t s = 0; s < dim; ++s) jac[i].push_back(frame_matrix(i, s));
    }
    return pullback_with_jacobian(frame_chart, ident, jac, alpha);
}

Form from_frame_basis(const Form& framed, const ChartPtr& chart, const SymbolicMatrix& coframe_matrix) {
    const std::size_t dim = chart->dim();
    if (framed.chart()->dim() != dim || coframe_matrix.rows() != dim || coframe_matrix.cols() != dim) {
        throw std::invalid_argument("frame does not match the form's chart");
    }
    // eta^s = sum_m G^s_m dq^m.
    std::vector<std::vector<ScalarExpr>> jac(dim);
    std::vector<ScalarExpr> ident;
    for (std::size_t s = 0; s < dim; ++s) {
        ident.push_back(ScalarExpr::variable(dim, s));
        for (std::size_t mm = 0; mm < dim; ++mm) jac[s].push_back(coframe_matrix(s, mm));
    }
    return pullback_with_jacobian(chart, ident, jac, framed);
}

Form to_frame_basis(const Form& alpha, const SplitFrame& frame) {
    if (!same_chart(alpha.chart(), frame.chart)) throw ChartMismatch("form and frame live on different charts");
    return to_frame_basis(alpha, frame.label_chart(), frame.matrix);
}

Form from_frame_basis(const Form& framed, const SplitFrame& frame) {
    return from_frame_basis(framed, frame.chart, frame.inverse);
}

FormSplit decompose(const Form& alpha, const SplitFrame& frame, Projector which) {
    if (!same_chart(alpha.chart(), frame.chart)) throw ChartMismatch("form and frame live on different charts");
    Form framed = to_frame_basis(alpha, frame);
    const std::size_t r = frame.rank();
    Form parallel_framed(framed.chart(), framed.degree());
    for (const auto& [idx, c] : framed.terms()) {
        bool keep = true;
        for (auto s : idx) {
            bool vertical = s < r;
            if ((which == Projector::P) != vertical) {
                keep = false;
                break;
            }
        }
        if (keep) parallel_framed.add_term(idx, c);
    }
    Form parallel = from_frame_basis(parallel_framed, frame);
    Form transversal = alpha - parallel;
    return FormSplit{std::move(parallel), std::move(transversal), which};
}

std::vector<RationalVector> multisymplectic_orthogonal(const Form& omega, std::span<const Rational> point,
                                                       const std::vector<RationalVector>& n_basis, std::size_t ell) {
    if (ell == 0) throw std::invalid_argument("orthogonal needs ell >= 1");
    const std::size_t dim = omega.chart()->dim();
    for (const auto& w : n_basis) {
        if (w.size() != dim) throw std::invalid_argument("tangent vector has wrong ambient dimension");
    }
    std::vector<RationalVector> everything;
    for (std::size_t i = 0; i < dim; ++i) {
        RationalVector e(dim);
        e[i] = 1;
        everything.push_back(std::move(e));
    }
    PointForm pf = evaluate_at(omega, point);
    if (ell + 1 > omega.degree()) return everything;

    RationalMatrix system(0, dim);
    for (const auto& combo : combinations(n_basis.size(), ell)) {
        PointForm beta = pf;
        for (auto w : combo) beta = beta.interior(n_basis[w]);
        RationalMatrix block = beta.contraction_matrix();
        for (std::size_t r = 0; r < block.rows(); ++r) {
            RationalVector row(dim);
            bool nonzero = false;
            for (std::size_t c = 0; c < dim; ++c) {
                row[c] = block(r, c);
                nonzero = nonzero || sgn(row[c]) != 0;
            }
            if (nonzero) system.append_row(row);
        }
    }
    return kernel_basis(system);
}

} // namespace plectic
