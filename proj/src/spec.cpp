#include "plectic/spec.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "plectic/parse.hpp"

namespace plectic {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw SpecError(where + ": " + what); }

void reject_unknown_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) fail(where, "unknown key '" + key + "'");
    }
}

const json& require(const json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::vector<std::string> as_string_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::uint64_t as_unsigned(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        fail(where, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

VectorSpec as_vector_spec(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object mapping coordinates to expressions");
    VectorSpec v;
    for (const auto& [key, value] : j.items()) v[key] = as_string(value, where + "." + key);
    return v;
}

ScalarExpr parse_at(const std::string& src, std::span<const std::string> vars, const std::string& where) {
    try {
        return parse_expr(src, vars);
    } catch (const ParseError& e) {
        fail(where, std::string("in expression \"") + src + "\": " + e.what());
    }
}

VectorField build_field(const ChartPtr& chart, const VectorSpec& spec, const std::string& where) {
    VectorField v = VectorField::zero(chart);
    for (const auto& [coord, expr] : spec) {
        auto idx = chart->index_of(coord);
        if (!idx) fail(where, "unknown coordinate '" + coord + "'");
        v.components[*idx] = parse_at(expr, chart->coords, where + "." + coord);
    }
    return v;
}

} // namespace

ManifoldSpec spec_from_json(const json& j) {
    if (!j.is_object()) fail("$", "spec must be a JSON object");
    reject_unknown_keys(j, "$", {"name", "coordinates", "form", "frame", "fibration", "samples"});
    ManifoldSpec s;
    s.name = as_string(require(j, "$", "name"), "name");
    s.coordinates = as_string_list(require(j, "$", "coordinates"), "coordinates");
    if (s.coordinates.empty()) fail("coordinates", "at least one coordinate is required");
    std::set<std::string> coords;
    for (std::size_t i = 0; i < s.coordinates.size(); ++i) {
        const auto& c = s.coordinates[i];
        std::string where = "coordinates[" + std::to_string(i) + "]";
        if (c.empty() || !(std::isalpha(static_cast<unsigned char>(c[0])) || c[0] == '_')) {
            fail(where, "'" + c + "' is not an identifier");
        }
        for (char ch : c) {
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') fail(where, "'" + c + "' is not an identifier");
        }
        if (!coords.insert(c).second) fail(where, "duplicate coordinate '" + c + "'");
    }

    const json& form = require(j, "$", "form");
    if (!form.is_object()) fail("form", "expected an object");
    reject_unknown_keys(form, "form", {"degree", "terms"});
    s.degree = as_unsigned(require(form, "form", "degree"), "form.degree");
    if (s.degree == 0 || s.degree > s.coordinates.size()) {
        fail("form.degree", "degree must be between 1 and the number of coordinates");
    }
    const json& terms = require(form, "form", "terms");
    if (!terms.is_array()) fail("form.terms", "expected an array");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string where = "form.terms[" + std::to_string(t) + "]";
        if (!terms[t].is_object()) fail(where, "expected an object");
        reject_unknown_keys(terms[t], where, {"indices", "coeff"});
        TermSpec term;
        term.indices = as_string_list(require(terms[t], where, "indices"), where + ".indices");
        term.coeff = as_string(require(terms[t], where, "coeff"), where + ".coeff");
        if (term.indices.size() != s.degree) {
            fail(where + ".indices", "has " + std::to_string(term.indices.size()) + " entries but the degree is " +
                                         std::to_string(s.degree));
        }
        std::set<std::string> seen;
        for (const auto& name : term.indices) {
            if (!coords.count(name)) fail(where + ".indices", "unknown coordinate '" + name + "'");
            if (!seen.insert(name).second) fail(where + ".indices", "repeated coordinate '" + name + "'");
        }
        s.terms.push_back(std::move(term));
    }

    if (auto it = j.find("frame"); it != j.end()) {
        if (!it->is_object()) fail("frame", "expected an object");
        reject_unknown_keys(*it, "frame", {"vertical", "horizontal", "labels"});
        FrameSpec f;
        for (const char* key : {"vertical", "horizontal"}) {
            const json& list = require(*it, "frame", key);
            std::string where = std::string("frame.") + key;
            if (!list.is_array()) fail(where, "expected an array");
            auto& dest = std::string(key) == "vertical" ? f.vertical : f.horizontal;
            for (std::size_t i = 0; i < list.size(); ++i) {
                dest.push_back(as_vector_spec(list[i], where + "[" + std::to_string(i) + "]"));
            }
        }
        if (auto lb = it->find("labels"); lb != it->end()) f.labels = as_string_list(*lb, "frame.labels");
        s.frame = std::move(f);
    }

    if (auto it = j.find("fibration"); it != j.end()) {
        if (!it->is_object()) fail("fibration", "expected an object");
        reject_unknown_keys(*it, "fibration", {"base", "auxiliary"});
        FibrationSpec f;
        f.base = as_string_list(require(*it, "fibration", "base"), "fibration.base");
        if (auto aux = it->find("auxiliary"); aux != it->end()) {
            f.auxiliary = as_string_list(*aux, "fibration.auxiliary");
        }
        for (const auto& name : f.base) {
            if (!coords.count(name)) fail("fibration.base", "unknown coordinate '" + name + "'");
        }
        for (const auto& name : f.auxiliary) {
            if (!coords.count(name)) fail("fibration.auxiliary", "unknown coordinate '" + name + "'");
        }
        s.fibration = std::move(f);
    }

    if (auto it = j.find("samples"); it != j.end()) {
        if (!it->is_object()) fail("samples", "expected an object");
        reject_unknown_keys(*it, "samples", {"count", "seed", "coordinate_range"});
        SamplesSpec smp;
        if (auto c = it->find("count"); c != it->end()) {
            smp.count = as_unsigned(*c, "samples.count");
            if (*smp.count == 0) fail("samples.count", "must be positive");
        }
        if (auto sd = it->find("seed"); sd != it->end()) smp.seed = as_unsigned(*sd, "samples.seed");
        if (auto r = it->find("coordinate_range"); r != it->end()) {
            if (!r->is_array() || r->size() != 2 || !(*r)[0].is_number_integer() || !(*r)[1].is_number_integer()) {
                fail("samples.coordinate_range", "expected [lo, hi] integers");
            }
            long lo = (*r)[0].get<long>();
            long hi = (*r)[1].get<long>();
            if (lo > hi) fail("samples.coordinate_range", "lo exceeds hi");
            smp.coordinate_range = std::make_pair(lo, hi);
        }
        s.samples = smp;
    }
    return s;
}

json spec_to_json(const ManifoldSpec& s) {
    json j;
    j["name"] = s.name;
    j["coordinates"] = s.coordinates;
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back({{"indices", t.indices}, {"coeff", t.coeff}});
    j["form"] = {{"degree", s.degree}, {"terms", terms}};
    if (s.frame) {
        json f;
        f["vertical"] = s.frame->vertical;
        f["horizontal"] = s.frame->horizontal;
        if (s.frame->labels) f["labels"] = *s.frame->labels;
        j["frame"] = f;
    }
    if (s.fibration) {
        json f;
        f["base"] = s.fibration->base;
        if (!s.fibration->auxiliary.empty()) f["auxiliary"] = s.fibration->auxiliary;
        j["fibration"] = f;
    }
    if (s.samples) {
        json smp = json::object();
        if (s.samples->count) smp["count"] = *s.samples->count;
        if (s.samples->seed) smp["seed"] = *s.samples->seed;
        if (s.samples->coordinate_range) {
            smp["coordinate_range"] = {s.samples->coordinate_range->first, s.samples->coordinate_range->second};
        }
        j["samples"] = smp;
    }
    return j;
}

namespace {

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw SpecError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

} // namespace

ManifoldSpec load_spec(const std::filesystem::path& path) {
    json j = read_json(path);
    try {
        return spec_from_json(j);
    } catch (const SpecError& e) {
        throw SpecError(path.string() + ": " + e.what());
    }
}

void save_spec(const ManifoldSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw SpecError(path.string() + ": cannot write file");
    out << spec_to_json(spec).dump(2) << "\n";
}

Model build_model(const ManifoldSpec& spec) {
    ChartPtr chart = make_chart(spec.name, spec.coordinates);
    Form omega(chart, spec.degree);
    for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        const auto& term = spec.terms[t];
        std::string where = "form.terms[" + std::to_string(t) + "]";
        MultiIndex idx;
        for (const auto& name : term.indices) {
            auto i = chart->index_of(name);
            if (!i) fail(where + ".indices", "unknown coordinate '" + name + "'");
            idx.push_back(*i);
        }
        omega.add_term(idx, parse_at(term.coeff, chart->coords, where + ".coeff"));
    }
    return Model{spec, chart, std::move(omega)};
}

SplitFrame build_model_frame(const Model& model, const PreMultisymplecticManifold& m) {
    if (!model.spec.frame) throw SpecError("frame: the spec has no frame block");
    const auto& fs = *model.spec.frame;
    std::vector<VectorField> vertical, horizontal;
    for (std::size_t i = 0; i < fs.vertical.size(); ++i) {
        vertical.push_back(build_field(model.chart, fs.vertical[i], "frame.vertical[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < fs.horizontal.size(); ++i) {
        horizontal.push_back(build_field(model.chart, fs.horizontal[i], "frame.horizontal[" + std::to_string(i) + "]"));
    }
    return build_split_frame(m, std::move(vertical), std::move(horizontal), fs.labels);
}

FiberedChart build_model_fibration(const Model& model) {
    if (!model.spec.fibration) throw SpecError("fibration: the spec has no fibration block");
    try {
        return make_fibered_chart(model.chart, model.spec.fibration->base, model.spec.fibration->auxiliary);
    } catch (const FieldTheoryError& e) {
        fail("fibration", e.what());
    }
}

Section section_from_json(const json& j, const FiberedChart& f) {
    if (!j.is_object()) fail("section", "expected an object mapping fiber coordinates to expressions");
    std::map<std::string, std::string> given;
    for (const auto& [key, value] : j.items()) given[key] = as_string(value, "section." + key);
    Section chi;
    for (std::size_t k = 0; k < f.fiber_dim(); ++k) {
        const auto& name = f.fiber_name(k);
        auto it = given.find(name);
        if (it == given.end()) {
            if (!f.auxiliary[k]) fail("section", "missing component for fiber coordinate '" + name + "'");
            chi.components.push_back(ScalarExpr(f.base_dim()));
            continue;
        }
        chi.components.push_back(parse_at(it->second, f.base_chart->coords, "section." + name));
        given.erase(it);
    }
    if (!given.empty()) fail("section", "'" + given.begin()->first + "' is not a fiber coordinate");
    return chi;
}

Section load_section(const std::filesystem::path& path, const FiberedChart& f) {
    json j = read_json(path);
    try {
        return section_from_json(j, f);
    } catch (const SpecError& e) {
        throw SpecError(path.string() + ": " + e.what());
    }
}

std::vector<TermSpec> form_terms(const Form& omega) {
    std::vector<TermSpec> out;
    const auto& names = omega.chart()->coords;
    for (const auto& [idx, c] : omega.terms()) {
        TermSpec t;
        for (auto i : idx) t.indices.push_back(names[i]);
        t.coeff = c.to_string(names);
        out.push_back(std::move(t));
    }
    return out;
}

ManifoldSpec thickened_spec(const ManifoldSpec& original, const Thickening& t) {
    ManifoldSpec s;
    s.name = original.name + "_thickened";
    s.coordinates = t.big_chart->coords;
    s.degree = t.omega_tilde.degree();
    s.terms = form_terms(t.omega_tilde);
    if (original.fibration) {
        FibrationSpec f = *original.fibration;
        for (const auto& fc : t.fibers) f.auxiliary.push_back(fc.name);
        s.fibration = std::move(f);
    }
    s.samples = original.samples;
    return s;
}

} // namespace plectic
