#include "riesz/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "riesz/errors.hpp"

namespace riesz::io {

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string csv_row(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += csv_number(xs[i]);
    }
    return out;
}

Json to_json(const RieszParameter& p) {
    Json j;
    j["d"] = p.d;
    if (p.is_log()) j["s"] = "log";
    else j["s"] = number(p.s);
    return j;
}

RieszParameter parameter_from_json(const Json& j) {
    const int d = j.at("d").get<int>();
    const auto& s = j.at("s");
    if (s.is_string()) {
        if (s.get<std::string>() != "log") throw DomainError("parameter s must be a number or \"log\"");
        return RieszParameter::logarithmic(d);
    }
    return RieszParameter::riesz(d, s.get<double>());
}

Json to_json(const ExternalFieldSpec& Q) {
    Json arr = Json::array();
    for (const auto& t : Q.terms) {
        Json pos = Json::array();
        for (double v : t.pos) pos.push_back(number(v));
        arr.push_back(Json{{"q", number(t.q)}, {"pos", pos}});
    }
    return arr;
}

ExternalFieldSpec field_from_json(const Json& j) {
    ExternalFieldSpec Q;
    for (const auto& t : j) {
        PointCharge c;
        c.q = t.at("q").get<double>();
        c.pos = t.at("pos").get<std::vector<double>>();
        Q.terms.push_back(std::move(c));
    }
    return Q;
}

Json configuration_json(const FeketeResult& r, const ExternalFieldSpec& Q, const RieszParameter& p) {
    Json j = to_json(p);
    j["field"] = to_json(Q);
    Json pts = Json::array();
    for (const auto& x : r.config.points()) {
        Json row = Json::array();
        for (double v : x) row.push_back(number(v));
        pts.push_back(row);
    }
    j["n"] = r.config.size();
    j["points"] = pts;
    j["energy"] = number(r.energy);
    j["delta"] = number(r.config.delta());
    j["grad_norm"] = number(r.grad_norm);
    j["converged"] = r.converged;
    j["starts"] = r.starts;
    j["converged_starts"] = r.converged_starts;
    j["best_start"] = r.best_start;
    return j;
}

ConfigurationRecord configuration_from_json(const Json& j, bool normalize) {
    ConfigurationRecord rec;
    rec.p = parameter_from_json(j);
    rec.field = field_from_json(j.at("field"));
    rec.config = Configuration::from_points(rec.p.d, j.at("points").get<std::vector<std::vector<double>>>(),
                                            normalize);
    rec.energy = j.at("energy").get<double>();
    rec.delta = j.at("delta").get<double>();
    return rec;
}

}  // namespace riesz::io
