#include "report_io.hpp"

#include <cmweyl/error.hpp>

#include <cmath>
#include <limits>

namespace cmweyl::cli {

namespace {

json number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

double read_number(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
}

}  // namespace

json to_json(const residue::ResidueReport& r) {
    json fields = json::array();
    for (const auto& c : r.per_field)
        fields.push_back({{"label", c.label}, {"disc", c.discriminant}, {"value", c.value}, {"error_bound", c.error_bound}});
    json j = {
        {"degree", r.degree},
        {"group", r.group},
        {"n_fields", r.n_fields},
        {"min_disc", r.min_disc},
        {"max_disc", r.max_disc},
        {"partial_sum", r.partial_sum},
        {"error_bound", r.error_bound},
        {"tail_estimate", number(r.tail_estimate)},
        {"count_exponent", number(r.count_exponent)},
        {"proportion", r.proportion ? json(*r.proportion) : json(nullptr)},
        {"per_field", std::move(fields)},
    };
    return j;
}

residue::ResidueReport residue_report_from_json(const json& j) {
    return guarded("residue report", [&] {
        residue::ResidueReport r;
        r.degree = j.at("degree").get<int>();
        r.group = j.at("group").get<std::string>();
        r.n_fields = j.at("n_fields").get<std::size_t>();
        r.min_disc = j.at("min_disc").get<std::int64_t>();
        r.max_disc = j.at("max_disc").get<std::int64_t>();
        r.partial_sum = j.at("partial_sum").get<double>();
        r.error_bound = j.at("error_bound").get<double>();
        r.tail_estimate = read_number(j.at("tail_estimate"));
        r.count_exponent = read_number(j.at("count_exponent"));
        if (!j.at("proportion").is_null()) r.proportion = j.at("proportion").get<double>();
        for (const auto& c : j.at("per_field"))
            r.per_field.push_back({c.at("label").get<std::string>(), c.at("disc").get<std::int64_t>(),
                                   c.at("value").get<double>(), c.at("error_bound").get<double>()});
        return r;
    });
}

json to_json(const cm::CountReport& r) {
    json checkpoints = json::array();
    for (const auto& [x, n] : r.checkpoints) checkpoints.push_back({{"X", x}, {"n_not_weyl", n}});
    return {
        {"X", r.X},
        {"n_cm", r.n_cm},
        {"n_weyl", r.n_weyl},
        {"n_not_weyl", r.n_not_weyl},
        {"n_c4", r.n_c4},
        {"n_v4", r.n_v4},
        {"n_d4", r.n_d4},
        {"n_isomorphism_classes", r.n_isomorphism_classes},
        {"ratio_weyl", r.ratio_weyl},
        {"slope_fit", number(r.slope_fit)},
        {"checkpoints", std::move(checkpoints)},
    };
}

cm::CountReport count_report_from_json(const json& j) {
    return guarded("count report", [&] {
        cm::CountReport r;
        r.X = j.at("X").get<std::int64_t>();
        r.n_cm = j.at("n_cm").get<std::int64_t>();
        r.n_weyl = j.at("n_weyl").get<std::int64_t>();
        r.n_not_weyl = j.at("n_not_weyl").get<std::int64_t>();
        r.n_c4 = j.at("n_c4").get<std::int64_t>();
        r.n_v4 = j.at("n_v4").get<std::int64_t>();
        r.n_d4 = j.at("n_d4").get<std::int64_t>();
        r.n_isomorphism_classes = j.at("n_isomorphism_classes").get<std::int64_t>();
        r.ratio_weyl = j.at("ratio_weyl").get<double>();
        r.slope_fit = read_number(j.at("slope_fit"));
        for (const auto& c : j.at("checkpoints"))
            r.checkpoints.emplace_back(c.at("X").get<std::int64_t>(), c.at("n_not_weyl").get<std::int64_t>());
        return r;
    });
}

json to_json(const cm::CMFieldRecord& r) {
    auto text = [](const cm::Q& q) {
        std::string s = q.numerator().str();
        if (q.denominator() != 1) s += "/" + q.denominator().str();
        return s;
    };
    return {
        {"base_D", r.base_D},
        {"alpha", {text(r.square_class.a), text(r.square_class.b)}},
        {"abs_disc", r.abs_disc},
        {"rel_norm", r.rel_norm},
        {"galois_type", cm::to_string(r.galois_type)},
        {"weyl", r.weyl},
    };
}

json to_json(const exponent::ExponentSet& s) {
    using exponent::to_string;
    json groups = json::array();
    for (const auto& g : s.groups) {
        groups.push_back({
            {"group", g.group},
            {"delta", to_string(g.input.delta)},
            {"malle", to_string(g.input.malle)},
            {"subconvex", to_string(g.input.subconvex)},
            {"C1", to_string(g.c1)},
            {"alpha", to_string(g.alpha)},
            {"beta", to_string(g.beta)},
            {"C2", to_string(g.c2)},
            {"C2_uniform", to_string(g.c2_uniform)},
        });
    }
    const auto& b = s.binding();
    return {
        {"d", s.d},
        {"C1", to_string(b.c1)},
        {"alpha", to_string(b.alpha)},
        {"beta", to_string(b.beta)},
        {"C2", to_string(b.c2)},
        {"C3", to_string(s.c3)},
        {"beta_max", to_string(s.beta_max)},
        {"binding_group", s.binding_group},
        {"provenance", s.provenance},
        {"groups", std::move(groups)},
    };
}

json to_json(const FieldRecord& r) {
    json j = {
        {"label", r.label},
        {"degree", r.degree},
        {"disc", r.discriminant},
        {"poly", r.poly},
        {"galois", r.galois_label},
        {"class_number", r.class_number ? json(*r.class_number) : json(nullptr)},
        {"regulator", r.regulator ? json(*r.regulator) : json(nullptr)},
        {"signature", {r.r1, r.r2}},
    };
    return j;
}

}  // namespace cmweyl::cli
