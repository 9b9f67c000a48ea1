#include "heisenberg/audit.hpp"

#include "heisenberg/algebra.hpp"
#include "heisenberg/coord_fields.hpp"
#include "heisenberg/errors.hpp"
#include "heisenberg/fock.hpp"
#include "heisenberg/group.hpp"
#include "heisenberg/schrodinger.hpp"

namespace heisenberg {

namespace {

std::vector<Generator> generators(std::size_t n)
{
    std::vector<Generator> g;
    for (unsigned j = 1; j <= n; ++j) g.push_back(Generator::x(j));
    for (unsigned j = 1; j <= n; ++j) g.push_back(Generator::y(j));
    g.push_back(Generator::t());
    return g;
}

AlgebraElement expected_bracket(std::size_t n, const Generator& a, const Generator& b)
{
    if (a.kind == Generator::Kind::Y && b.kind == Generator::Kind::X && a.index == b.index)
        return GaussianRational(4) * t_field(n);
    if (a.kind == Generator::Kind::X && b.kind == Generator::Kind::Y && a.index == b.index)
        return GaussianRational(-4) * t_field(n);
    return AlgebraElement(n);
}

// Coefficient k with op = k * ref when ref is a single constant-coefficient term.
std::optional<GaussianRational> scalar_multiple(const CoordOperator& op, const CoordOperator& ref)
{
    if (ref.terms().size() != 1) return std::nullopt;
    const auto& [alpha, coeff] = *ref.terms().begin();
    if (coeff.terms().size() != 1 || op.terms().size() != 1) return std::nullopt;
    const auto& [beta, c] = *op.terms().begin();
    if (beta != alpha || c.terms().size() != 1) return std::nullopt;
    const auto& [e_ref, c_ref] = *coeff.terms().begin();
    const auto& [e, c_op] = *c.terms().begin();
    if (e != e_ref) return std::nullopt;
    const auto k = c_op / c_ref;
    if (!(op == k * ref)) return std::nullopt;
    return k;
}

GroupPoint point(std::vector<GaussianRational> z, Rational t) { return {std::move(z), std::move(t)}; }

}  // namespace

IdentityAudit audit_brackets(std::size_t n)
{
    IdentityAudit a;
    a.id = "brackets_table";
    a.statement = "[Y_j, X_k] = 4 delta_jk T, all other generator brackets vanish";
    a.displayed = "[Y_j,X_k] = 4 delta_jk T";
    a.consistent = true;
    nlohmann::json rows = nlohmann::json::array();
    const auto gens = generators(n);
    for (std::size_t p = 0; p < gens.size(); ++p) {
        for (std::size_t q = p + 1; q < gens.size(); ++q) {
            const auto r = bracket_audit(n, gens[p], gens[q]);
            const bool as_displayed = r.algebra_commutator == expected_bracket(n, gens[p], gens[q]);
            a.consistent = a.consistent && as_displayed && r.operator_match && r.polynomial_match;
            rows.push_back({{"left", to_string(gens[p])},
                            {"right", to_string(gens[q])},
                            {"algebra", to_string(r.algebra_commutator)},
                            {"coordinate", to_string(r.coordinate_commutator)},
                            {"coordinate_match", r.operator_match && r.polynomial_match},
                            {"matches_display", as_displayed}});
        }
    }
    a.engine = to_string(commutator(y_field(n, 1), x_field(n, 1)));
    a.details = {{"n", n}, {"pairs", rows}};
    return a;
}

IdentityAudit audit_sublaplacian_displays()
{
    IdentityAudit a;
    a.id = "sublaplacian_two_displays";
    a.statement = "the complex-field build of L_alpha equals 1/4 sum(X_j^2 + Y_j^2) + i alpha T";
    nlohmann::json rows = nlohmann::json::array();
    bool all_equal = true;
    for (const auto& alpha : {GaussianRational(0), GaussianRational(1), GaussianRational(Rational(1, 2), Rational(-3))}) {
        const auto from_z = sublaplacian_complex_form(1, alpha);
        const auto real = sublaplacian(1, alpha);
        const auto diff = from_z - real;
        all_equal = all_equal && diff.is_zero();
        rows.push_back({{"alpha", to_string(alpha)},
                        {"complex_form", to_string(from_z)},
                        {"real_form", to_string(real)},
                        {"difference", to_string(diff)}});
    }
    a.consistent = all_equal;
    a.engine = to_string(sublaplacian_complex_form(1, GaussianRational(0)) - sublaplacian(1, GaussianRational(0)));
    a.displayed = "0";
    a.details = {{"n", 1}, {"cases", rows}};
    return a;
}

IdentityAudit audit_laplacian_expansion()
{
    IdentityAudit a;
    a.id = "laplacian_coordinate_expansion";
    a.statement = "sum(X_j^2 + Y_j^2) equals its displayed expansion in x, y, t derivatives";
    nlohmann::json rows = nlohmann::json::array();
    a.consistent = true;
    for (std::size_t n : {1, 2}) {
        const auto engine = realize(heisenberg_laplacian(n));
        const auto shown = laplacian_expanded_display(n);
        const bool same = engine == shown;
        a.consistent = a.consistent && same;
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [alpha, coeff] : engine.terms()) {
            const auto it = shown.terms().find(alpha);
            terms.push_back({{"derivative", alpha},
                             {"engine", to_string(coeff)},
                             {"displayed", it == shown.terms().end() ? "0" : to_string(it->second)}});
        }
        rows.push_back({{"n", n}, {"term_for_term", same}, {"terms", terms}});
        if (n == 1) {
            a.engine = to_string(engine);
            a.displayed = to_string(shown);
        }
    }
    a.details = {{"cases", rows}};
    return a;
}

IdentityAudit audit_factorization()
{
    IdentityAudit a;
    a.id = "factorization_A_Adag";
    a.statement = "Delta_H1 = A A^dagger with A = X - iY, A^dagger = X + iY";
    a.displayed = "A*Adag - Lap = 0";

    const auto defect = factor_A() * factor_A_dagger() - heisenberg_laplacian(1);
    const auto t = t_field(1);
    std::optional<GaussianRational> k_pbw;
    if (defect.terms().size() == 1 && defect.terms().begin()->first == t.terms().begin()->first)
        k_pbw = defect.terms().begin()->second;

    const auto coord_defect = realize(factor_A()) * realize(factor_A_dagger()) - realize(heisenberg_laplacian(1));
    const auto k_coord = scalar_multiple(coord_defect, realize(t));

    const auto display_defect_a = factor_A_display() - realize(factor_A());
    const auto display_defect_ad = factor_A_dagger_display() - realize(factor_A_dagger());

    a.engine = to_string(defect);
    a.consistent = defect.is_zero();
    a.details = {{"pure_T_multiple", k_pbw.has_value()},
                 {"k_pbw", k_pbw ? to_string(*k_pbw) : "none"},
                 {"k_coordinate_oracle", k_coord ? to_string(*k_coord) : "none"},
                 {"oracle_agrees", k_pbw && k_coord && *k_pbw == *k_coord},
                 {"coordinate_defect", to_string(coord_defect)},
                 {"displayed_A_minus_engine_A", to_string(display_defect_a)},
                 {"displayed_Adag_minus_engine_Adag", to_string(display_defect_ad)}};
    return a;
}

IdentityAudit audit_z_bracket()
{
    IdentityAudit a;
    a.id = "z_zbar_bracket";
    a.statement = "[Z_j, Zb_k] = -2 delta_jk T";
    a.displayed = to_string(GaussianRational(-2) * t_field(1));
    const auto engine = commutator(z_field(1, 1), zbar_field(1, 1));
    a.engine = to_string(engine);
    a.consistent = engine == GaussianRational(-2) * t_field(1);

    const auto coord = realize(z_field(1, 1)) * realize(zbar_field(1, 1)) - realize(zbar_field(1, 1)) * realize(z_field(1, 1));
    const auto k_coord = scalar_multiple(coord, realize(t_field(1)));
    const auto k = engine.coefficient(t_field(1).terms().begin()->first);
    a.details = {{"k_engine", to_string(k)},
                 {"k_coordinate_oracle", k_coord ? to_string(*k_coord) : "none"},
                 {"oracle_agrees", k_coord && *k_coord == k},
                 {"engine_over_displayed", to_string(k / GaussianRational(-2))},
                 {"off_diagonal_zero", commutator(z_field(2, 1), zbar_field(2, 2)).is_zero()}};
    return a;
}

IdentityAudit audit_fock_normalization(unsigned max_n)
{
    IdentityAudit a;
    a.id = "fock_basis_normalization";
    a.statement = "the displayed phi_n form an orthonormal basis of the Fock space";
    const auto audit = basis_audit(1.0, 1, max_n);
    a.consistent = audit.printed_orthonormal;
    a.engine = audit.corrected_orthonormal ? "corrected basis orthonormal" : "corrected basis not orthonormal";
    a.displayed = "printed basis orthonormal";
    a.details = to_json(audit);
    return a;
}

IdentityAudit audit_dilation_sign()
{
    IdentityAudit a;
    a.id = "dilation_sign";
    a.statement = "delta with sign -1, (z,t) -> (-lambda z, -lambda^2 t), is an automorphism";
    a.displayed = "automorphism";
    const Dilation d{Rational(3, 2), -1};
    const std::vector<std::pair<GroupPoint, GroupPoint>> pairs = {
        {point({GaussianRational(Rational(1), Rational(2))}, Rational(1, 3)), point({GaussianRational(Rational(-1, 2), Rational(1))}, Rational(5))},
        {point({GaussianRational(Rational(0), Rational(1))}, Rational(0)), point({GaussianRational(Rational(1), Rational(0))}, Rational(0))},
        {point({GaussianRational(Rational(2), Rational(-1)), GaussianRational(Rational(1, 3), Rational(1))}, Rational(-2)),
         point({GaussianRational(Rational(1), Rational(1)), GaussianRational(Rational(0), Rational(-4))}, Rational(7, 2))},
    };
    bool hom = true;
    bool anti = true;
    for (const auto& [g, h] : pairs) {
        const auto lhs = dilate(d, multiply(g, h));
        hom = hom && lhs == multiply(dilate(d, g), dilate(d, h));
        anti = anti && lhs == multiply(dilate(d, h), dilate(d, g));
    }
    a.consistent = hom;
    a.engine = hom ? "automorphism" : anti ? "anti-automorphism" : "neither";
    a.details = {{"lambda", "3/2"}, {"pairs_checked", pairs.size()}, {"homomorphism", hom}, {"anti_homomorphism", anti}};
    return a;
}

IdentityAudit audit_representation_convention()
{
    IdentityAudit a;
    a.id = "representation_convention";
    a.statement = "pi(X_j) = |l|^(1/2) d_j, pi(Y_j) = i sgn(l) |l|^(1/2) x_j, pi(T) = i l is a representation";
    a.displayed = "homomorphism";
    const ExactRepParameter one{Rational(1), 1};
    const auto literal = homomorphism_audit(1, one, Convention::PaperLiteral);
    const auto repaired = homomorphism_audit(1, one, Convention::Homomorphic);
    a.consistent = literal.passes;
    a.engine = "mismatch factor " + to_string(literal.mismatch_factor);
    a.details = {{"paper_literal", {{"bracket_image", to_string(literal.bracket_image)},
                                    {"expected", to_string(literal.expected)},
                                    {"mismatch_factor", to_string(literal.mismatch_factor)},
                                    {"passes", literal.passes}}},
                 {"homomorphic", {{"bracket_image", to_string(repaired.bracket_image)},
                                  {"expected", to_string(repaired.expected)},
                                  {"mismatch_factor", to_string(repaired.mismatch_factor)},
                                  {"passes", repaired.passes},
                                  {"all_generator_pairs", repaired.all_generator_pairs}}}};
    return a;
}

std::vector<IdentityAudit> audit_identities()
{
    return {audit_brackets(),         audit_sublaplacian_displays(), audit_laplacian_expansion(),
            audit_factorization(),    audit_z_bracket(),             audit_fock_normalization(),
            audit_dilation_sign(),    audit_representation_convention()};
}

nlohmann::json to_json(const IdentityAudit& a)
{
    return {{"id", a.id},
            {"statement", a.statement},
            {"engine", a.engine},
            {"displayed", a.displayed},
            {"verdict", a.consistent ? "consistent" : "discrepancy"},
            {"details", a.details}};
}

}  // namespace heisenberg
