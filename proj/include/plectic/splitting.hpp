#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plectic/exterior.hpp"
#include "plectic/report.hpp"

namespace plectic {

/// Chart with a closed k-form. Closedness is checked symbolically on construction.
class PreMultisymplecticManifold {
public:
    explicit PreMultisymplecticManifold(Form omega);

    const ChartPtr& chart() const { return omega_.chart(); }
    std::size_t degree() const { return omega_.degree(); }
    const Form& omega() const { return omega_; }

private:
    Form omega_;
};

class FrameError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One element of an adapted frame. `pivot` is the chart position the label
/// was taken from (or dim + slot for synthetic labels); it fixes enumeration order.
struct FrameSlot {
    std::string label;
    bool vertical = false;
    std::size_t pivot = 0;
};

/// Kernel frame V_A plus a chosen complement H_a, and the dual coframe.
///
/// Slots are ordered vertical first, then horizontal. `coframe[s]` is the
/// 1-form dual to slot s, so the first r entries are the theta^A.
struct SplitFrame {
    ChartPtr chart;
    std::vector<VectorField> vertical;
    std::vector<VectorField> horizontal;
    std::vector<Form> coframe;
    std::vector<FrameSlot> slots;
    /// Columns are the frame fields in slot order.
    SymbolicMatrix matrix;
    /// Rows are the coframe components; inverse of `matrix`.
    SymbolicMatrix inverse;

    std::size_t rank() const { return vertical.size(); }
    std::size_t corank() const { return horizontal.size(); }
    const VectorField& field(std::size_t slot) const;
    /// Chart whose coordinates are the slot labels; frame-basis forms live on it.
    ChartPtr label_chart() const;
};

/// Basis of {X : i_X omega = 0} at `point`. Throws PoleError.
std::vector<RationalVector> kernel_at(const Form& omega, std::span<const Rational> point);
std::vector<RationalVector> kernel_at(const PreMultisymplecticManifold& m, std::span<const Rational> point);

/// Kernel dimension at each sample; EVIDENCE iff all agree. Samples where a
/// coefficient has a pole are skipped and noted.
VerificationReport verify_constant_rank(const PreMultisymplecticManifold& m,
                                        const std::vector<RationalVector>& samples);
VerificationReport verify_constant_rank(const Form& omega, const std::vector<RationalVector>& samples);

/// Checks counts, symbolic independence and i_V omega = 0 for every vertical
/// field, then inverts the frame matrix. Labels default to greedy pivots.
SplitFrame build_split_frame(const PreMultisymplecticManifold& m, std::vector<VectorField> vertical,
                             std::vector<VectorField> horizontal,
                             std::optional<std::vector<std::string>> labels = std::nullopt);

/// Re-expresses alpha in the basis of coframe monomials: the result lives on
/// `frame_chart` (one coordinate per frame element), coefficients unchanged in
/// meaning (functions of the original coordinates). `frame_matrix` has the
/// frame fields as columns.
Form to_frame_basis(const Form& alpha, const ChartPtr& frame_chart, const SymbolicMatrix& frame_matrix);
/// Inverse of to_frame_basis; `coframe_matrix` has the coframe components as rows.
Form from_frame_basis(const Form& framed, const ChartPtr& chart, const SymbolicMatrix& coframe_matrix);

Form to_frame_basis(const Form& alpha, const SplitFrame& frame);
Form from_frame_basis(const Form& framed, const SplitFrame& frame);

enum class Projector { P, R };

struct FormSplit {
    Form parallel;
    Form transversal;
    Projector which;
};

/// parallel = pure-theta monomials for P, pure-horizontal monomials for R.
FormSplit decompose(const Form& alpha, const SplitFrame& frame, Projector which);

/// Basis of {V : i_{V ^ W1 ^ ... ^ Wl} omega = 0 for all W's from `n_basis`}
/// at `point`, solved over every unordered l-combination of `n_basis`.
std::vector<RationalVector> multisymplectic_orthogonal(const Form& omega, std::span<const Rational> point,
                                                       const std::vector<RationalVector>& n_basis, std::size_t ell);

} // namespace plectic
