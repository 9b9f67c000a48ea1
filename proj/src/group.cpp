#include "heisenberg/group.hpp"

namespace heisenberg {

namespace {

nlohmann::json rational_json(const Rational& q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return to_string(q);
}

Rational rational_from_json(const nlohmann::json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return Rational(j.get<double>());  // exact binary value
    throw DomainError("group point coordinate must be a number or rational string");
}

}  // namespace

GroupPointF to_float(const GroupPoint& g)
{
    GroupPointF out;
    for (const auto& c : g.z) out.z.push_back(c.to_complex());
    out.t = g.t.get_d();
    return out;
}

nlohmann::json to_json(const GroupPoint& g)
{
    auto arr = nlohmann::json::array();
    for (const auto& c : g.z) {
        arr.push_back(rational_json(c.real()));
        arr.push_back(rational_json(c.imag()));
    }
    arr.push_back(rational_json(g.t));
    return arr;
}

nlohmann::json to_json(const GroupPointF& g)
{
    auto arr = nlohmann::json::array();
    for (const auto& c : g.z) {
        arr.push_back(c.real());
        arr.push_back(c.imag());
    }
    arr.push_back(g.t);
    return arr;
}

GroupPoint group_point_from_json(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() < 3 || j.size() % 2 == 0)
        throw DomainError("group point JSON must be an array of 2n+1 coordinates");
    GroupPoint g;
    for (std::size_t k = 0; k + 1 < j.size(); k += 2)
        g.z.emplace_back(rational_from_json(j[k]), rational_from_json(j[k + 1]));
    g.t = rational_from_json(j.back());
    return g;
}

}  // namespace heisenberg
