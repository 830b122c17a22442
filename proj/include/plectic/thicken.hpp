#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plectic/splitting.hpp"

namespace plectic {

/// One fiber coordinate of the bundle of R-transversal (k-1)-forms.
/// `slots` are frame slots in monomial order: vertical ones first, each group
/// in frame order. The coordinate multiplies the wedge of those coframe elements.
struct FiberCoordinate {
    std::vector<std::size_t> slots;
    std::string name;
};

/// All (k-1)-subsets of the frame containing at least one vertical slot.
///
/// Subsets are listed lexicographically by the slots' pivot positions on the
/// base chart. Names are "p" followed by the labels in monomial order, joined
/// by '_'. There are C(d, k-1) - C(l, k-1) of them.
std::vector<FiberCoordinate> enumerate_fiber_coordinates(std::span<const FrameSlot> slots, std::size_t k);

/// Binomial coefficient, 0 when k > n.
std::size_t binomial(std::size_t n, std::size_t k);

class ThickeningError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Multisymplectic thickening of a pre-k-plectic chart: base coordinates
/// followed by fiber coordinates, the tautological (k-1)-form and
/// omega_tilde = tau^* omega + d theta0.
struct Thickening {
    PreMultisymplecticManifold base;
    SplitFrame frame;
    ChartPtr big_chart;
    std::vector<FiberCoordinate> fibers;
    CoordinateMap tau;
    CoordinateMap zero_section;
    Form theta0;
    Form omega_tilde;

    std::size_t base_dim() const { return base.chart()->dim(); }
    std::size_t fiber_count() const { return fibers.size(); }
    /// Frame on the big chart: base frame fields (zero fiber components)
    /// followed by the fiber coordinate fields.
    SymbolicMatrix big_frame_matrix() const;
    SymbolicMatrix big_coframe_matrix() const;
    ChartPtr big_label_chart() const;
};

/// Theta0 = sum_I p_I eta^I on the big chart, eta pulled back along tau.
Form tautological_form(const ChartPtr& big_chart, const SplitFrame& frame, std::span<const FiberCoordinate> fibers,
                       const CoordinateMap& tau);

/// Rejects k < 3 and frames built on another chart.
Thickening build_thickening(const PreMultisymplecticManifold& m, const SplitFrame& frame);

/// Form expressed in the big chart's frame basis (base coframe + dp).
Form frame_presentation(const Thickening& t, const Form& alpha);

VerificationReport verify_closed(const Form& omega);
VerificationReport verify_closed(const Thickening& t);

/// Trivial kernel of X -> i_X omega at every sample (pole samples skipped).
VerificationReport verify_nondegenerate(const Form& omega, const std::vector<RationalVector>& samples);
VerificationReport verify_nondegenerate(const Thickening& t, const std::vector<RationalVector>& samples);

/// zero_section^* omega_tilde == omega, symbolically.
VerificationReport verify_zero_section_pullback(const Thickening& t);

/// At each zero-section sample, the ell-orthogonal of the base tangent space
/// lies inside it. `ell` defaults to k - 1.
VerificationReport verify_coisotropic(const Thickening& t, const std::vector<RationalVector>& samples,
                                      std::optional<std::size_t> ell = std::nullopt);

/// Random points on the big chart with pole rejection; at least one has a
/// nonzero fiber coordinate whenever the fiber is nontrivial.
std::vector<RationalVector> sample_big_chart(const Thickening& t, Sampler& sampler, std::size_t count);
/// Random points on the zero section (fiber coordinates 0).
std::vector<RationalVector> sample_zero_section(const Thickening& t, Sampler& sampler, std::size_t count);

} // namespace plectic
