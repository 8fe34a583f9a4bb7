#include "copulab/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "copulab/constructions.hpp"
#include "copulab/errors.hpp"
#include "copulab/evc.hpp"

namespace copulab {

using nlohmann::json;

namespace {

PickandsMeasure measure_from_json(const json& j) {
    if (!j.is_object()) throw SpecParseError("measure spec must be an object");
    std::vector<PickandsAtom> atoms;
    if (j.contains("atoms")) {
        for (const auto& entry : j.at("atoms")) {
            if (!entry.is_array() || entry.size() != 2)
                throw SpecParseError("measure atoms must be [t, w] pairs");
            atoms.push_back({entry.at(0).get<double>(), entry.at(1).get<double>()});
        }
    }
    StepDensity density;
    if (j.contains("density")) {
        const auto& d = j.at("density");
        density.breaks = d.at("breaks").get<std::vector<double>>();
        density.values = d.at("values").get<std::vector<double>>();
    }
    double singular = j.value("singular_weight", 0.0);
    return PickandsMeasure(std::move(atoms), std::move(density), singular);
}

json measure_to_json(const PickandsMeasure& m) {
    json j;
    j["atoms"] = json::array();
    for (const auto& a : m.atoms()) j["atoms"].push_back({a.t, a.w});
    if (!m.density().empty()) {
        j["density"] = {{"breaks", m.density().breaks},
                        {"values", m.density().values}};
    }
    j["singular_weight"] = m.singular_weight();
    return j;
}

Copula copula_from_json(const json& j) {
    if (j.is_string()) {
        // allow nested built-in references
        std::string name = j.get<std::string>();
        if (name == "M") return minimum_copula();
        if (name == "W") return countermonotone();
        if (name == "Pi") return independence();
        throw SpecParseError("unknown built-in copula: " + name);
    }
    if (!j.is_object() || !j.contains("family"))
        throw SpecParseError("copula spec needs a \"family\" field");
    std::string family = j.at("family").get<std::string>();

    if (family == "M") return minimum_copula();
    if (family == "W") return countermonotone();
    if (family == "Pi") return independence();

    if (family == "gumbel")
        return evc_from_function(gumbel_function(j.at("theta").get<double>()));

    if (family == "evc")
        return evc_from_measure(measure_from_json(j.at("measure")));

    if (family == "shuffle") {
        ShuffleSpec spec;
        spec.N = j.at("N").get<int>();
        spec.sigma = j.at("sigma").get<std::vector<int>>();
        return shuffle_copula(spec);
    }

    if (family == "checkerboard") {
        CheckerboardSpec spec;
        spec.N = j.at("N").get<int>();
        spec.T = j.at("T").get<std::vector<std::vector<double>>>();
        Copula base = j.contains("base") ? copula_from_json(j.at("base"))
                                         : independence();
        return checkerboard(spec, base);
    }

    if (family == "rotation") {
        RotationSpec spec;
        if (j.contains("offsets"))
            spec.offsets = j.at("offsets").get<std::vector<double>>();
        else
            spec = default_rotations(j.at("terms").get<int>());
        return rotation_copula(spec);
    }

    if (family == "mix") {
        std::vector<double> weights;
        std::vector<Copula> parts;
        for (const auto& entry : j.at("parts")) {
            if (!entry.is_array() || entry.size() != 2)
                throw SpecParseError("mix parts must be [weight, spec] pairs");
            weights.push_back(entry.at(0).get<double>());
            parts.push_back(copula_from_json(entry.at(1)));
        }
        return convex_combination(weights, parts);
    }

    throw SpecParseError("unknown copula family: " + family);
}

json copula_to_json(const Copula& c) {
    const std::string family = c.family();
    if (family == "M" || family == "W" || family == "Pi")
        return json{{"family", family}};

    if (const auto* evc = dynamic_cast<const ExtremeValueCopula*>(&c.impl())) {
        if (const auto* g = dynamic_cast<const GumbelFunction*>(
                &evc->dependence_function().impl()))
            return json{{"family", "gumbel"}, {"theta", g->theta()}};
        const PickandsMeasure* m = evc->dependence_function().measure();
        if (!m)
            throw SpecParseError("cannot serialize an extreme value copula "
                                 "without a measure or named family");
        return json{{"family", "evc"}, {"measure", measure_to_json(*m)}};
    }

    if (const auto* s = dynamic_cast<const ShuffleCopula*>(&c.impl()))
        return json{{"family", "shuffle"}, {"N", s->spec().N},
                    {"sigma", s->spec().sigma}};

    if (const auto* cb = dynamic_cast<const CheckerboardCopula*>(&c.impl()))
        return json{{"family", "checkerboard"}, {"N", cb->spec().N},
                    {"T", cb->spec().T}, {"base", copula_to_json(cb->base())}};

    if (const auto* r = dynamic_cast<const RotationCopula*>(&c.impl()))
        return json{{"family", "rotation"}, {"offsets", r->spec().offsets}};

    if (const auto* mix = dynamic_cast<const MixCopula*>(&c.impl())) {
        json parts = json::array();
        for (std::size_t k = 0; k < mix->parts().size(); ++k)
            parts.push_back({mix->weights()[k], copula_to_json(mix->parts()[k])});
        return json{{"family", "mix"}, {"parts", parts}};
    }

    throw SpecParseError("unknown copula implementation: " + family);
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SpecParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

PickandsMeasure measure_from_json_text(const std::string& text) {
    try {
        return measure_from_json(parse_text(text));
    } catch (const json::exception& e) {
        throw SpecParseError(std::string("bad measure spec: ") + e.what());
    }
}

Copula copula_from_json_text(const std::string& text) {
    try {
        return copula_from_json(parse_text(text));
    } catch (const json::exception& e) {
        throw SpecParseError(std::string("bad copula spec: ") + e.what());
    }
}

std::string measure_to_json_text(const PickandsMeasure& m) {
    return measure_to_json(m).dump();
}

std::string copula_to_json_text(const Copula& c) {
    return copula_to_json(c).dump();
}

PickandsMeasure load_measure(const std::string& path) {
    return measure_from_json_text(read_file(path));
}

Copula load_copula(const std::string& path_or_builtin) {
    if (path_or_builtin == "M") return minimum_copula();
    if (path_or_builtin == "W") return countermonotone();
    if (path_or_builtin == "Pi") return independence();
    return copula_from_json_text(read_file(path_or_builtin));
}

} // namespace copulab
