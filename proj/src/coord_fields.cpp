#include "heisenberg/coord_fields.hpp"

#include <numeric>

#include "heisenberg/errors.hpp"

namespace heisenberg {

namespace {

std::size_t nvars(std::size_t n) { return 2 * n + 1; }
std::size_t x_var(unsigned j) { return j - 1; }
std::size_t y_var(std::size_t n, unsigned j) { return n + j - 1; }
std::size_t t_var(std::size_t n) { return 2 * n; }

Exponents unit(std::size_t n, std::size_t var)
{
    Exponents e(nvars(n), 0);
    e[var] = 1;
    return e;
}

Rational binomial(unsigned n, unsigned k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

void check_dim(std::size_t a, std::size_t b)
{
    if (a != b) throw DomainError("coordinate dimension mismatch");
}

// Vector field for one generator applied to f.
PolyFunction apply_generator(const Generator& g, const PolyFunction& f)
{
    const std::size_t n = f.dim();
    const std::size_t tv = t_var(n);
    switch (g.kind) {
    case Generator::Kind::X:
        return f.derivative(x_var(g.index)) + GaussianRational(2) * (PolyFunction::y(n, g.index) * f.derivative(tv));
    case Generator::Kind::Y:
        return f.derivative(y_var(n, g.index)) - GaussianRational(2) * (PolyFunction::x(n, g.index) * f.derivative(tv));
    case Generator::Kind::T: return f.derivative(tv);
    }
    return f;
}

CoordOperator generator_operator(std::size_t n, const Generator& g)
{
    const std::size_t tv = t_var(n);
    const auto one = PolyFunction::constant(n, 1);
    CoordOperator op(n);
    switch (g.kind) {
    case Generator::Kind::X:
        op.add_term(unit(n, x_var(g.index)), one);
        op.add_term(unit(n, tv), GaussianRational(2) * PolyFunction::y(n, g.index));
        break;
    case Generator::Kind::Y:
        op.add_term(unit(n, y_var(n, g.index)), one);
        op.add_term(unit(n, tv), GaussianRational(-2) * PolyFunction::x(n, g.index));
        break;
    case Generator::Kind::T: op.add_term(unit(n, tv), one); break;
    }
    return op;
}

// Letters of a PBW monomial in left-to-right order.
std::vector<Generator> letters(const Monomial& m)
{
    std::vector<Generator> w;
    for (std::size_t j = 0; j < m.dim(); ++j)
        for (unsigned e = 0; e < m.a[j]; ++e) w.push_back(Generator::x(static_cast<unsigned>(j + 1)));
    for (std::size_t j = 0; j < m.dim(); ++j)
        for (unsigned e = 0; e < m.b[j]; ++e) w.push_back(Generator::y(static_cast<unsigned>(j + 1)));
    for (unsigned e = 0; e < m.c; ++e) w.push_back(Generator::t());
    return w;
}

PolyFunction partial(const PolyFunction& f, const Exponents& alpha)
{
    PolyFunction out = f;
    for (std::size_t v = 0; v < alpha.size(); ++v)
        for (unsigned k = 0; k < alpha[v]; ++k) out = out.derivative(v);
    return out;
}

std::string monomial_text(const Exponents& e, std::size_t n, const char* xs, const char* ys, const char* ts)
{
    std::string out;
    auto append = [&out](const std::string& sym, unsigned p) {
        if (p == 0) return;
        if (!out.empty()) out += "*";
        out += sym;
        if (p > 1) out += "^" + std::to_string(p);
    };
    for (std::size_t j = 0; j < n; ++j) append(xs + std::to_string(j + 1), e[j]);
    for (std::size_t j = 0; j < n; ++j) append(ys + std::to_string(j + 1), e[n + j]);
    append(ts, e[2 * n]);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- PolyFunction

PolyFunction::PolyFunction(std::size_t n) : n_(n)
{
    if (n == 0) throw DomainError("group dimension n must be >= 1");
}

PolyFunction PolyFunction::constant(std::size_t n, const GaussianRational& c)
{
    PolyFunction f(n);
    f.add_term(Exponents(nvars(n), 0), c);
    return f;
}

PolyFunction PolyFunction::monomial(std::size_t n, const Exponents& e, const GaussianRational& c)
{
    PolyFunction f(n);
    f.add_term(e, c);
    return f;
}

PolyFunction PolyFunction::x(std::size_t n, unsigned j)
{
    if (j < 1 || j > n) throw DomainError("coordinate index out of range");
    return monomial(n, unit(n, x_var(j)));
}

PolyFunction PolyFunction::y(std::size_t n, unsigned j)
{
    if (j < 1 || j > n) throw DomainError("coordinate index out of range");
    return monomial(n, unit(n, y_var(n, j)));
}

PolyFunction PolyFunction::t(std::size_t n) { return monomial(n, unit(n, t_var(n))); }

unsigned PolyFunction::total_degree() const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
    return d;
}

void PolyFunction::add_term(const Exponents& e, const GaussianRational& c)
{
    if (e.size() != nvars(n_)) throw DomainError("exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyFunction PolyFunction::derivative(std::size_t var) const
{
    if (var >= nvars(n_)) throw DomainError("derivative variable out of range");
    PolyFunction out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        --d[var];
        out.add_term(d, c * GaussianRational(static_cast<long>(e[var])));
    }
    return out;
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o)
{
    check_dim(n_, o.n_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

PolyFunction& PolyFunction::operator-=(const PolyFunction& o)
{
    check_dim(n_, o.n_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

PolyFunction& PolyFunction::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

PolyFunction operator*(const PolyFunction& a, const PolyFunction& b)
{
    check_dim(a.n_, b.n_);
    PolyFunction out(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e(ea.size());
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

std::vector<PolyFunction> monomial_basis(std::size_t n, unsigned max_degree)
{
    std::vector<PolyFunction> out;
    Exponents e(nvars(n), 0);
    // Odometer over all exponent vectors with entries <= max_degree, filtered by total degree.
    while (true) {
        if (std::accumulate(e.begin(), e.end(), 0U) <= max_degree) out.push_back(PolyFunction::monomial(n, e));
        std::size_t v = 0;
        while (v < e.size() && e[v] == max_degree) e[v++] = 0;
        if (v == e.size()) break;
        ++e[v];
    }
    return out;
}

// --------------------------------------------------------------- CoordOperator

CoordOperator::CoordOperator(std::size_t n) : n_(n)
{
    if (n == 0) throw DomainError("group dimension n must be >= 1");
}

CoordOperator CoordOperator::multiplication(const PolyFunction& f)
{
    CoordOperator op(f.dim());
    op.add_term(Exponents(nvars(f.dim()), 0), f);
    return op;
}

CoordOperator CoordOperator::derivative(std::size_t n, const Exponents& alpha, const PolyFunction& coeff)
{
    CoordOperator op(n);
    op.add_term(alpha, coeff);
    return op;
}

void CoordOperator::add_term(const Exponents& alpha, const PolyFunction& coeff)
{
    check_dim(n_, coeff.dim());
    if (alpha.size() != nvars(n_)) throw DomainError("derivative multi-index has wrong length");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CoordOperator& CoordOperator::operator+=(const CoordOperator& o)
{
    check_dim(n_, o.n_);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
}

CoordOperator& CoordOperator::operator-=(const CoordOperator& o)
{
    check_dim(n_, o.n_);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, GaussianRational(-1) * c);
    return *this;
}

CoordOperator operator*(const GaussianRational& c, CoordOperator a)
{
    CoordOperator out(a.n_);
    for (const auto& [alpha, coeff] : a.terms_) out.add_term(alpha, c * coeff);
    return out;
}

CoordOperator operator*(const CoordOperator& a, const CoordOperator& b)
{
    check_dim(a.n_, b.n_);
    const std::size_t nv = nvars(a.n_);
    CoordOperator out(a.n_);
    for (const auto& [alpha, ca] : a.terms_) {
        for (const auto& [beta, cb] : b.terms_) {
            // d^alpha (cb d^beta) = sum_{gamma <= alpha} C(alpha,gamma) (d^gamma cb) d^{alpha-gamma+beta}
            Exponents gamma(nv, 0);
            while (true) {
                Rational weight(1);
                Exponents index(nv);
                for (std::size_t v = 0; v < nv; ++v) {
                    weight *= binomial(alpha[v], gamma[v]);
                    index[v] = alpha[v] - gamma[v] + beta[v];
                }
                auto coeff = ca * partial(cb, gamma);
                if (!coeff.is_zero()) out.add_term(index, GaussianRational(weight) * coeff);

                std::size_t v = 0;
                while (v < nv && gamma[v] == alpha[v]) gamma[v++] = 0;
                if (v == nv) break;
                ++gamma[v];
            }
        }
    }
    return out;
}

PolyFunction apply(const CoordOperator& op, const PolyFunction& f)
{
    check_dim(op.dim(), f.dim());
    PolyFunction out(f.dim());
    for (const auto& [alpha, coeff] : op.terms()) out += coeff * partial(f, alpha);
    return out;
}

PolyFunction apply(const AlgebraElement& p, const PolyFunction& f)
{
    check_dim(p.dim(), f.dim());
    PolyFunction out(f.dim());
    for (const auto& [m, c] : p.terms()) {
        const auto w = letters(m);
        PolyFunction g = f;
        for (auto it = w.rbegin(); it != w.rend(); ++it) g = apply_generator(*it, g);
        out += c * g;
    }
    return out;
}

CoordOperator realize(const AlgebraElement& p)
{
    const std::size_t n = p.dim();
    CoordOperator out(n);
    for (const auto& [m, c] : p.terms()) {
        CoordOperator term = CoordOperator::multiplication(PolyFunction::constant(n, c));
        for (const auto& g : letters(m)) term = term * generator_operator(n, g);
        out += term;
    }
    return out;
}

PolyFunction left_translate(const PolyFunction& f, const GroupPoint& g)
{
    const std::size_t n = f.dim();
    check_dim(n, g.dim());

    // g^{-1}(x,y,t) = (x - a, y - b, t - t0 + 2 sum_j (a_j y_j - b_j x_j)) with z0 = a + ib.
    std::vector<PolyFunction> image;
    PolyFunction new_t = PolyFunction::t(n) - PolyFunction::constant(n, g.t);
    for (unsigned j = 1; j <= n; ++j) {
        const auto& a = g.z[j - 1].real();
        const auto& b = g.z[j - 1].imag();
        new_t += GaussianRational(2 * a) * PolyFunction::y(n, j) - GaussianRational(2 * b) * PolyFunction::x(n, j);
    }
    for (unsigned j = 1; j <= n; ++j) image.push_back(PolyFunction::x(n, j) - PolyFunction::constant(n, g.z[j - 1].real()));
    for (unsigned j = 1; j <= n; ++j) image.push_back(PolyFunction::y(n, j) - PolyFunction::constant(n, g.z[j - 1].imag()));
    image.push_back(new_t);

    // Cache powers of each substituted coordinate.
    std::vector<std::vector<PolyFunction>> powers(image.size());
    auto power_of = [&](std::size_t v, unsigned k) -> const PolyFunction& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(PolyFunction::constant(n, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * image[v]);
        return cache[k];
    };

    PolyFunction out(n);
    for (const auto& [e, c] : f.terms()) {
        PolyFunction term = PolyFunction::constant(n, c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] != 0) term = term * power_of(v, e[v]);
        out += term;
    }
    return out;
}

bool invariance_check(const AlgebraElement& p, const GroupPoint& g, const PolyFunction& f)
{
    return apply(p, left_translate(f, g)) == left_translate(apply(p, f), g);
}

bool invariance_check(const CoordOperator& op, const GroupPoint& g, const PolyFunction& f)
{
    return apply(op, left_translate(f, g)) == left_translate(apply(op, f), g);
}

BracketAudit bracket_audit(std::size_t n, const Generator& left, const Generator& right, unsigned probe_degree)
{
    BracketAudit audit{left, right, CoordOperator(n), AlgebraElement(n)};
    const auto l = generator_operator(n, left);
    const auto r = generator_operator(n, right);
    audit.coordinate_commutator = l * r - r * l;
    audit.algebra_commutator = commutator(AlgebraElement::generator(n, left), AlgebraElement::generator(n, right));
    audit.operator_match = audit.coordinate_commutator == realize(audit.algebra_commutator);

    audit.polynomial_match = true;
    for (const auto& f : monomial_basis(n, probe_degree)) {
        const auto composed = apply(l, apply(r, f)) - apply(r, apply(l, f));
        if (!(composed == apply(audit.algebra_commutator, f))) {
            audit.polynomial_match = false;
            break;
        }
    }
    return audit;
}

BracketAudit bracket_audit(std::size_t n, unsigned j, unsigned k, unsigned probe_degree)
{
    return bracket_audit(n, Generator::y(j), Generator::x(k), probe_degree);
}

CoordOperator laplacian_expanded_display(std::size_t n)
{
    CoordOperator op(n);
    const std::size_t tv = t_var(n);
    const auto one = PolyFunction::constant(n, 1);
    for (unsigned j = 1; j <= n; ++j) {
        Exponents dxx(nvars(n), 0), dyy(nvars(n), 0), dxt(nvars(n), 0), dyt(nvars(n), 0), dtt(nvars(n), 0);
        dxx[x_var(j)] = 2;
        dyy[y_var(n, j)] = 2;
        dxt[x_var(j)] = 1;
        dxt[tv] = 1;
        dyt[y_var(n, j)] = 1;
        dyt[tv] = 1;
        dtt[tv] = 2;
        const auto x = PolyFunction::x(n, j);
        const auto y = PolyFunction::y(n, j);
        op.add_term(dxx, one);
        op.add_term(dyy, one);
        op.add_term(dxt, GaussianRational(4) * y);
        op.add_term(dyt, GaussianRational(-4) * x);
        op.add_term(dtt, GaussianRational(4) * (x * x + y * y));
    }
    return op;
}

namespace {

CoordOperator first_order_display(int y_sign)
{
    // d_x + s i d_y + (2y + s 2ix) d_t, s = -1 for A and +1 for A^dag.
    const std::size_t n = 1;
    const GaussianRational i = GaussianRational::i();
    const GaussianRational s(y_sign);
    CoordOperator op(n);
    op.add_term({1, 0, 0}, PolyFunction::constant(n, 1));
    op.add_term({0, 1, 0}, PolyFunction::constant(n, s * i));
    op.add_term({0, 0, 1}, GaussianRational(2) * PolyFunction::y(n, 1) + (s * GaussianRational(2) * i) * PolyFunction::x(n, 1));
    return op;
}

}  // namespace

CoordOperator factor_A_display() { return first_order_display(-1); }
CoordOperator factor_A_dagger_display() { return first_order_display(+1); }

std::string to_string(const PolyFunction& f)
{
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        const bool simple = c.is_real() || sgn(c.real()) == 0;
        const bool negative = simple && (c.is_real() ? sgn(c.real()) < 0 : sgn(c.imag()) < 0);
        const GaussianRational mag = negative ? -c : c;
        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;
        const std::string coeff = simple ? to_string(mag) : "(" + to_string(mag) + ")";
        const std::string mono = monomial_text(e, f.dim(), "x", "y", "t");
        if (mono.empty()) out += coeff;
        else if (mag == GaussianRational(1)) out += mono;
        else out += coeff + "*" + mono;
    }
    return out;
}

std::string to_string(const CoordOperator& op)
{
    if (op.is_zero()) return "0";
    std::string out;
    for (const auto& [alpha, coeff] : op.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(coeff) + ")";
        const std::string d = monomial_text(alpha, op.dim(), "dx", "dy", "dt");
        if (!d.empty()) out += "*" + d;
    }
    return out;
}

nlohmann::json to_json(const PolyFunction& f)
{
    nlohmann::json j;
    j["n"] = f.dim();
    j["terms"] = nlohmann::json::array();
    for (const auto& [e, c] : f.terms())
        j["terms"].push_back({{"exponents", e}, {"re", to_string(c.real())}, {"im", to_string(c.imag())}});
    return j;
}

nlohmann::json to_json(const CoordOperator& op)
{
    nlohmann::json j;
    j["n"] = op.dim();
    j["terms"] = nlohmann::json::array();
    for (const auto& [alpha, coeff] : op.terms()) j["terms"].push_back({{"derivative", alpha}, {"coefficient", to_json(coeff)}});
    return j;
}

}  // namespace heisenberg
