#include "heisenberg/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "heisenberg/errors.hpp"

namespace heisenberg {

namespace {

void check_index(std::size_t n, unsigned j)
{
    if (j < 1 || j > n) throw DomainError("generator index " + std::to_string(j) + " out of range 1.." + std::to_string(n));
}

// Sort key realizing the canonical PBW order X_1..X_n, Y_1..Y_n, T.
std::pair<int, unsigned> order_key(const Generator& g) { return {static_cast<int>(g.kind), g.index}; }

bool out_of_order(const Generator& left, const Generator& right) { return order_key(left) > order_key(right); }

bool contracts(const Generator& left, const Generator& right)
{
    return left.kind == Generator::Kind::Y && right.kind == Generator::Kind::X && left.index == right.index;
}

Monomial word_to_monomial(std::size_t n, const std::vector<Generator>& sorted)
{
    Monomial m = Monomial::one(n);
    for (const auto& g : sorted) {
        switch (g.kind) {
        case Generator::Kind::X: ++m.a[g.index - 1]; break;
        case Generator::Kind::Y: ++m.b[g.index - 1]; break;
        case Generator::Kind::T: ++m.c; break;
        }
    }
    return m;
}

mpz_class binomial(unsigned n, unsigned k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class factorial(unsigned n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Y^b X^a = sum_k k! C(b,k) C(a,k) 4^k X^{a-k} Y^{b-k} T^k for one index.
void multiply_monomials(const Monomial& left, const Monomial& right, const GaussianRational& coeff, AlgebraElement& out)
{
    const std::size_t n = left.dim();
    std::vector<unsigned> kmax(n);
    for (std::size_t j = 0; j < n; ++j) kmax[j] = std::min(left.b[j], right.a[j]);

    std::vector<unsigned> k(n, 0);
    while (true) {
        Monomial m = Monomial::one(n);
        mpz_class weight = 1;
        unsigned total = 0;
        for (std::size_t j = 0; j < n; ++j) {
            m.a[j] = left.a[j] + right.a[j] - k[j];
            m.b[j] = left.b[j] - k[j] + right.b[j];
            if (k[j] != 0) {
                mpz_class four_k;
                mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k[j]);
                weight *= factorial(k[j]) * binomial(left.b[j], k[j]) * binomial(right.a[j], k[j]) * four_k;
            }
            total += k[j];
        }
        m.c = left.c + right.c + total;
        out.add_term(m, coeff * GaussianRational(Rational(weight)));

        std::size_t j = 0;
        while (j < n && k[j] == kmax[j]) k[j++] = 0;
        if (j == n) break;
        ++k[j];
    }
}

}  // namespace

std::string to_string(const Generator& g)
{
    switch (g.kind) {
    case Generator::Kind::X: return "X" + std::to_string(g.index);
    case Generator::Kind::Y: return "Y" + std::to_string(g.index);
    case Generator::Kind::T: return "T";
    }
    return "?";
}

unsigned Monomial::degree() const
{
    return std::accumulate(a.begin(), a.end(), 0U) + std::accumulate(b.begin(), b.end(), 0U) + 2 * c;
}

unsigned Monomial::length() const
{
    return std::accumulate(a.begin(), a.end(), 0U) + std::accumulate(b.begin(), b.end(), 0U) + c;
}

AlgebraElement::AlgebraElement(std::size_t n) : n_(n)
{
    if (n == 0) throw DomainError("group dimension n must be >= 1");
}

AlgebraElement AlgebraElement::scalar(std::size_t n, const GaussianRational& c)
{
    AlgebraElement e(n);
    e.add_term(Monomial::one(n), c);
    return e;
}

AlgebraElement AlgebraElement::generator(std::size_t n, const Generator& g)
{
    if (g.kind != Generator::Kind::T) check_index(n, g.index);
    AlgebraElement e(n);
    e.add_term(word_to_monomial(n, {g}), GaussianRational(1));
    return e;
}

AlgebraElement AlgebraElement::monomial(const Monomial& m, const GaussianRational& c)
{
    if (m.a.size() != m.b.size()) throw DomainError("monomial exponent vectors differ in length");
    AlgebraElement e(m.dim());
    e.add_term(m, c);
    return e;
}

GaussianRational AlgebraElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

void AlgebraElement::add_term(const Monomial& m, const GaussianRational& c)
{
    if (m.dim() != n_ || m.b.size() != n_) throw DomainError("monomial dimension mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o)
{
    if (o.n_ != n_) throw DomainError("algebra dimension mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o)
{
    if (o.n_ != n_) throw DomainError("algebra dimension mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

AlgebraElement multiply(const AlgebraElement& p, const AlgebraElement& q)
{
    if (p.dim() != q.dim()) throw DomainError("algebra dimension mismatch");
    AlgebraElement out(p.dim());
    for (const auto& [mp, cp] : p.terms())
        for (const auto& [mq, cq] : q.terms()) multiply_monomials(mp, mq, cp * cq, out);
    return out;
}

AlgebraElement commutator(const AlgebraElement& p, const AlgebraElement& q) { return p * q - q * p; }

AlgebraElement power(const AlgebraElement& p, unsigned k)
{
    AlgebraElement result = AlgebraElement::scalar(p.dim(), GaussianRational(1));
    for (unsigned i = 0; i < k; ++i) result = result * p;
    return result;
}

AlgebraElement pbw_normalize(std::size_t n, const std::vector<Generator>& word, const GaussianRational& coeff,
                             RewriteOrder order)
{
    for (const auto& g : word)
        if (g.kind != Generator::Kind::T) check_index(n, g.index);

    AlgebraElement out(n);
    std::vector<std::pair<std::vector<Generator>, GaussianRational>> pending;
    pending.emplace_back(word, coeff);

    while (!pending.empty()) {
        auto [w, c] = std::move(pending.back());
        pending.pop_back();
        if (c.is_zero()) continue;

        std::optional<std::size_t> pos;
        if (order == RewriteOrder::LeftToRight) {
            for (std::size_t i = 0; i + 1 < w.size() && !pos; ++i)
                if (out_of_order(w[i], w[i + 1])) pos = i;
        } else {
            for (std::size_t i = w.size(); i-- > 1 && !pos;)
                if (out_of_order(w[i - 1], w[i])) pos = i - 1;
        }

        if (!pos) {
            out.add_term(word_to_monomial(n, w), c);
            continue;
        }
        const std::size_t i = *pos;
        if (contracts(w[i], w[i + 1])) {
            std::vector<Generator> contracted(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            contracted.push_back(Generator::t());
            contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            pending.emplace_back(std::move(contracted), c * GaussianRational(4));
        }
        std::swap(w[i], w[i + 1]);
        pending.emplace_back(std::move(w), std::move(c));
    }
    return out;
}

std::optional<unsigned> homogeneous_degree(const AlgebraElement& p)
{
    if (p.is_zero()) throw DomainError("homogeneous degree of the zero element is undefined");
    std::optional<unsigned> degree;
    for (const auto& [m, c] : p.terms()) {
        if (!degree) degree = m.degree();
        else if (*degree != m.degree()) return std::nullopt;
    }
    return degree;
}

AlgebraElement x_field(std::size_t n, unsigned j) { return AlgebraElement::generator(n, Generator::x(j)); }
AlgebraElement y_field(std::size_t n, unsigned j) { return AlgebraElement::generator(n, Generator::y(j)); }
AlgebraElement t_field(std::size_t n) { return AlgebraElement::generator(n, Generator::t()); }

AlgebraElement z_field(std::size_t n, unsigned j)
{
    const GaussianRational half(Rational(1, 2));
    return half * (x_field(n, j) - GaussianRational::i() * y_field(n, j));
}

AlgebraElement zbar_field(std::size_t n, unsigned j)
{
    const GaussianRational half(Rational(1, 2));
    return half * (x_field(n, j) + GaussianRational::i() * y_field(n, j));
}

AlgebraElement sublaplacian(std::size_t n, const GaussianRational& alpha)
{
    AlgebraElement out = GaussianRational(Rational(1, 4)) * heisenberg_laplacian(n);
    out += (GaussianRational::i() * alpha) * t_field(n);
    return out;
}

AlgebraElement sublaplacian_complex_form(std::size_t n, const GaussianRational& alpha)
{
    AlgebraElement sum(n);
    for (unsigned j = 1; j <= n; ++j) {
        const auto z = z_field(n, j);
        const auto zb = zbar_field(n, j);
        sum += z * zb + zb * z;
    }
    AlgebraElement out = GaussianRational(Rational(-1, 2)) * sum;
    out += (GaussianRational::i() * alpha) * t_field(n);
    return out;
}

AlgebraElement heisenberg_laplacian(std::size_t n)
{
    AlgebraElement out(n);
    for (unsigned j = 1; j <= n; ++j) {
        const auto x = x_field(n, j);
        const auto y = y_field(n, j);
        out += x * x + y * y;
    }
    return out;
}

AlgebraElement factor_A() { return x_field(1, 1) - GaussianRational::i() * y_field(1, 1); }

AlgebraElement factor_A_dagger() { return x_field(1, 1) + GaussianRational::i() * y_field(1, 1); }

AlgebraElement preconditioner(std::size_t n, unsigned power_)
{
    if (power_ < 1) throw DomainError("preconditioner power must be >= 1");
    return power(heisenberg_laplacian(n), power_);
}

AlgebraElement formal_transpose(const AlgebraElement& p)
{
    const std::size_t n = p.dim();
    AlgebraElement out(n);
    for (const auto& [m, c] : p.terms()) {
        // Reversed word T^c Y^b X^a; generators within each block commute.
        Monomial ys = Monomial::one(n);
        Monomial xs = Monomial::one(n);
        ys.b = m.b;
        ys.c = m.c;
        xs.a = m.a;
        const GaussianRational sign(m.length() % 2 == 0 ? 1 : -1);
        out += AlgebraElement::monomial(ys, sign * c) * AlgebraElement::monomial(xs);
    }
    return out;
}

AlgebraElement dilate(const AlgebraElement& p, const Rational& mu)
{
    AlgebraElement out(p.dim());
    for (const auto& [m, c] : p.terms()) {
        Rational scale(1);
        for (unsigned k = 0; k < m.degree(); ++k) scale *= mu;
        out.add_term(m, c * GaussianRational(scale));
    }
    return out;
}

std::string to_string(const Monomial& m)
{
    std::string out;
    auto append = [&out](const std::string& sym, unsigned e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += sym;
        if (e > 1) out += "^" + std::to_string(e);
    };
    for (std::size_t j = 0; j < m.dim(); ++j) append("X" + std::to_string(j + 1), m.a[j]);
    for (std::size_t j = 0; j < m.dim(); ++j) append("Y" + std::to_string(j + 1), m.b[j]);
    append("T", m.c);
    return out;
}

std::string to_string(const AlgebraElement& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        // Factor a leading sign out of purely real or purely imaginary coefficients.
        const bool simple = c.is_real() || sgn(c.real()) == 0;
        const bool negative = simple && (c.is_real() ? sgn(c.real()) < 0 : sgn(c.imag()) < 0);
        const GaussianRational mag = negative ? -c : c;

        if (first) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        first = false;

        std::string coeff = simple ? to_string(mag) : "(" + to_string(mag) + ")";
        if (m.is_one()) {
            out += coeff;
        } else {
            if (!(mag == GaussianRational(1))) out += coeff + "*";
            out += to_string(m);
        }
    }
    return out;
}

nlohmann::json to_json(const AlgebraElement& p)
{
    nlohmann::json j;
    j["n"] = p.dim();
    j["terms"] = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        j["terms"].push_back({{"x", m.a}, {"y", m.b}, {"t", m.c}, {"re", to_string(c.real())}, {"im", to_string(c.imag())}});
    }
    return j;
}

AlgebraElement algebra_element_from_json(const nlohmann::json& j)
{
    const auto n = j.at("n").get<std::size_t>();
    AlgebraElement out(n);
    for (const auto& term : j.at("terms")) {
        Monomial m{term.at("x").get<std::vector<unsigned>>(), term.at("y").get<std::vector<unsigned>>(),
                   term.at("t").get<unsigned>()};
        out.add_term(m, GaussianRational(parse_rational(term.at("re").get<std::string>()),
                                         parse_rational(term.at("im").get<std::string>())));
    }
    return out;
}

}  // namespace heisenberg
