#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "plectic/linalg.hpp"

namespace plectic {

/// PASS is a symbolic certificate, EVIDENCE an exact check on finitely many
/// sample points, FAIL carries at least one witness.
enum class Verdict { Pass, Evidence, Fail };

std::string to_string(Verdict v);

struct SampleRecord {
    RationalVector point;
    bool skipped = false; // pole at the point
    bool ok = true;
    std::optional<std::size_t> dimension;
    std::vector<RationalVector> vectors;
    std::string note;
};

struct VerificationReport {
    std::string check;
    Verdict verdict = Verdict::Pass;
    std::string summary;
    std::vector<std::string> witnesses;
    std::vector<SampleRecord> samples;
    std::optional<std::uint64_t> seed;
    double seconds = 0.0;

    bool passed() const { return verdict != Verdict::Fail; }
};

struct SamplingOptions {
    std::size_t count = 50;
    std::uint64_t seed = 0;
    long lo = -5;
    long hi = 5;
};

/// Deterministic integer sample points in [lo, hi]^dim. Points rejected by
/// `accept` are redrawn, up to a bounded number of attempts per point.
class Sampler {
public:
    explicit Sampler(SamplingOptions options) : options_(options), rng_(options.seed) {}

    RationalVector draw(std::size_t dim);

    template <class Accept>
    std::vector<RationalVector> draw_many(std::size_t dim, std::size_t count, Accept accept) {
        std::vector<RationalVector> out;
        for (std::size_t i = 0; i < count; ++i) {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                RationalVector p = draw(dim);
                if (accept(p)) {
                    out.push_back(std::move(p));
                    break;
                }
            }
        }
        return out;
    }

    const SamplingOptions& options() const { return options_; }

private:
    SamplingOptions options_;
    std::mt19937_64 rng_;
};

std::string vector_to_string(std::span<const Rational> v);

} // namespace plectic
