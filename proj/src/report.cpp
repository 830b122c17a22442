#include "plectic/report.hpp"

namespace plectic {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "PASS";
    case Verdict::Evidence:
        return "EVIDENCE";
    case Verdict::Fail:
        return "FAIL";
    }
    return "?";
}

RationalVector Sampler::draw(std::size_t dim) {
    std::uniform_int_distribution<long> dist(options_.lo, options_.hi);
    RationalVector p(dim);
    for (auto& x : p) x = dist(rng_);
    return p;
}

std::string vector_to_string(std::span<const Rational> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace plectic
