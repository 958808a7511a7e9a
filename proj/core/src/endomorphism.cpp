#include "projdyn/endomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "projdyn/random.hpp"

namespace projdyn {

namespace {

constexpr double kDegenerateRelative = 1e-14;

// powers[i][k] = Z_i^k for k <= degree.
struct PowerTable {
    std::array<std::vector<cplx>, 3> pw;

    PowerTable(const Lift& z, int degree) {
        for (std::size_t i = 0; i < 3; ++i) {
            pw[i].resize(static_cast<std::size_t>(degree) + 1);
            pw[i][0] = 1.0;
            for (std::size_t k = 1; k <= static_cast<std::size_t>(degree); ++k) pw[i][k] = pw[i][k - 1] * z[i];
        }
    }

    cplx power(std::size_t i, int k) const { return pw[i][static_cast<std::size_t>(k)]; }
};

cplx evaluate(const std::vector<Monomial>& terms, const PowerTable& t) {
    cplx acc{};
    for (const Monomial& m : terms) acc += m.coeff * t.power(0, m.exponent[0]) * t.power(1, m.exponent[1]) * t.power(2, m.exponent[2]);
    return acc;
}

std::array<cplx, 3> evaluate_gradient(const std::vector<Monomial>& terms, const PowerTable& t) {
    std::array<cplx, 3> g{};
    for (const Monomial& m : terms) {
        const auto& e = m.exponent;
        if (e[0] > 0) g[0] += m.coeff * static_cast<double>(e[0]) * t.power(0, e[0] - 1) * t.power(1, e[1]) * t.power(2, e[2]);
        if (e[1] > 0) g[1] += m.coeff * static_cast<double>(e[1]) * t.power(0, e[0]) * t.power(1, e[1] - 1) * t.power(2, e[2]);
        if (e[2] > 0) g[2] += m.coeff * static_cast<double>(e[2]) * t.power(0, e[0]) * t.power(1, e[1]) * t.power(2, e[2] - 1);
    }
    return g;
}

std::vector<Monomial> canonical(std::vector<Monomial> terms) {
    std::map<Exponent, cplx> acc;
    for (const Monomial& m : terms) acc[m.exponent] += m.coeff;
    std::vector<Monomial> out;
    for (const auto& [e, c] : acc)
        if (c != cplx{}) out.push_back({e, c});
    return out;
}

HomogeneousPolynomial power(const HomogeneousPolynomial& base, int k) {
    HomogeneousPolynomial out(0, {{{0, 0, 0}, 1.0}});
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int degree, std::vector<Monomial> terms) : degree_(degree) {
    require(degree >= 0, "negative degree");
    for (const Monomial& m : terms) {
        if (m.exponent[0] < 0 || m.exponent[1] < 0 || m.exponent[2] < 0)
            fail(ErrorKind::InvalidArgument, "negative exponent");
        if (m.exponent[0] + m.exponent[1] + m.exponent[2] != degree)
            fail(ErrorKind::DegreeMismatch, "monomial exponents must sum to the degree");
    }
    terms_ = canonical(std::move(terms));
}

cplx HomogeneousPolynomial::operator()(const Lift& z) const noexcept { return evaluate(terms_, PowerTable(z, degree_)); }

std::array<cplx, 3> HomogeneousPolynomial::gradient(const Lift& z) const noexcept {
    return evaluate_gradient(terms_, PowerTable(z, degree_));
}

HomogeneousPolynomial HomogeneousPolynomial::operator*(const HomogeneousPolynomial& rhs) const {
    std::vector<Monomial> out;
    out.reserve(terms_.size() * rhs.terms_.size());
    for (const Monomial& a : terms_)
        for (const Monomial& b : rhs.terms_)
            out.push_back({{a.exponent[0] + b.exponent[0], a.exponent[1] + b.exponent[1], a.exponent[2] + b.exponent[2]},
                           a.coeff * b.coeff});
    return HomogeneousPolynomial(degree_ + rhs.degree_, std::move(out));
}

HomogeneousPolynomial HomogeneousPolynomial::operator+(const HomogeneousPolynomial& rhs) const {
    if (terms_.empty()) return rhs;
    if (rhs.terms_.empty()) return *this;
    if (degree_ != rhs.degree_) fail(ErrorKind::DegreeMismatch, "adding homogeneous polynomials of different degree");
    std::vector<Monomial> out = terms_;
    out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
    return HomogeneousPolynomial(degree_, std::move(out));
}

HomogeneousPolynomial HomogeneousPolynomial::scaled(cplx s) const {
    std::vector<Monomial> out = terms_;
    for (Monomial& m : out) m.coeff *= s;
    return HomogeneousPolynomial(degree_, std::move(out));
}

HomogeneousEndomorphism::HomogeneousEndomorphism(int degree, std::array<HomogeneousPolynomial, 3> components)
    : degree_(degree), components_(std::move(components)) {
    if (degree < 2) fail(ErrorKind::InvalidArgument, "degree must be at least 2");
    for (const auto& c : components_)
        if (c.degree() != degree && !c.terms().empty())
            fail(ErrorKind::DegreeMismatch, "component degree differs from map degree");
    if (coefficient_scale() == 0.0) fail(ErrorKind::Degenerate, "all components vanish identically");
}

double HomogeneousEndomorphism::coefficient_scale() const noexcept {
    double s = 0.0;
    for (const auto& c : components_)
        for (const Monomial& m : c.terms()) s += std::abs(m.coeff);
    return s;
}

Lift HomogeneousEndomorphism::lift_map(const Lift& z) const noexcept {
    const PowerTable t(z, degree_);
    return {evaluate(components_[0].terms(), t), evaluate(components_[1].terms(), t), evaluate(components_[2].terms(), t)};
}

std::array<std::array<cplx, 3>, 3> HomogeneousEndomorphism::differential(const Lift& z) const noexcept {
    const PowerTable t(z, degree_);
    return {evaluate_gradient(components_[0].terms(), t), evaluate_gradient(components_[1].terms(), t),
            evaluate_gradient(components_[2].terms(), t)};
}

double HomogeneousEndomorphism::check_nondegenerate(int samples, std::uint64_t seed, double floor) const {
    Rng rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const Lift z = normalize({rng.complex_normal(), rng.complex_normal(), rng.complex_normal()});
        const Lift y = lift_map(z);
        worst = std::min(worst, std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2])}));
    }
    if (worst < floor) fail(ErrorKind::Degenerate, "map nearly vanishes on a sampled unit lift");
    return worst;
}

HomogeneousEndomorphism homogenize(const Polynomial& p, const Polynomial& q) {
    const int d = p.degree();
    if (d != q.degree()) fail(ErrorKind::DegreeMismatch, "p and q must have the same degree");
    if (d < 2) fail(ErrorKind::DegreeMismatch, "degree must be at least 2");
    std::vector<Monomial> pz, qw;
    for (int k = 0; k <= d; ++k) {
        if (p.coefficient(k) != cplx{}) pz.push_back({{k, 0, d - k}, p.coefficient(k)});
        if (q.coefficient(k) != cplx{}) qw.push_back({{0, k, d - k}, q.coefficient(k)});
    }
    HomogeneousEndomorphism f(d, {HomogeneousPolynomial(d, pz), HomogeneousPolynomial(d, qw),
                                  HomogeneousPolynomial(d, {{{0, 0, d}, 1.0}})});
    f.product_ = ProductFactors{p, q};
    return f;
}

HomogeneousEndomorphism squaring_map() {
    const Polynomial sq{0.0, 0.0, 1.0};
    return homogenize(sq, sq);
}

HomogeneousEndomorphism siegel_product_map(double theta) {
    const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi * theta);
    const Polynomial r{0.0, lambda, 1.0};
    return homogenize(r, r);
}

HomogeneousEndomorphism compose(const HomogeneousEndomorphism& outer, const HomogeneousEndomorphism& inner) {
    const int d = outer.degree() * inner.degree();
    std::array<HomogeneousPolynomial, 3> out;
    const auto& g = inner.components();
    for (std::size_t i = 0; i < 3; ++i) {
        HomogeneousPolynomial acc;
        for (const Monomial& m : outer.components()[i].terms()) {
            HomogeneousPolynomial term = power(g[0], m.exponent[0]) * power(g[1], m.exponent[1]) * power(g[2], m.exponent[2]);
            acc = acc + term.scaled(m.coeff);
        }
        out[i] = acc.terms().empty() ? HomogeneousPolynomial(d, {}) : acc;
    }
    return HomogeneousEndomorphism(d, std::move(out));
}

ProjPoint apply(const HomogeneousEndomorphism& f, const ProjPoint& p) {
    const Lift y = f.lift_map(p.lift());
    const double m = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2])});
    if (!(m > kDegenerateRelative * f.coefficient_scale()))
        fail(ErrorKind::Degenerate, "F vanishes at the point");
    return ProjPoint(y);
}

Eigen::Matrix2cd jacobian(const HomogeneousEndomorphism& f, const ProjPoint& p, AffineChart src, AffineChart dst) {
    const ChartCoords c = to_chart(p, src);
    const Lift z = chart_lift(c, src);
    const Lift y = f.lift_map(z);
    // Validates the destination chart at f(p).
    to_chart(ProjPoint(y), dst);
    const auto df = f.differential(z);

    std::array<std::size_t, 2> in{}, out{};
    for (std::size_t i = 0, j = 0, k = 0; i < 3; ++i) {
        if (static_cast<int>(i) != src.index) in[j++] = i;
        if (static_cast<int>(i) != dst.index) out[k++] = i;
    }
    const auto e = static_cast<std::size_t>(dst.index);
    const cplx ye = y[e];
    Eigen::Matrix2cd jac;
    for (int r = 0; r < 2; ++r) {
        const std::size_t k = out[static_cast<std::size_t>(r)];
        for (int col = 0; col < 2; ++col) {
            const std::size_t i = in[static_cast<std::size_t>(col)];
            jac(r, col) = (df[k][i] * ye - y[k] * df[e][i]) / (ye * ye);
        }
    }
    return jac;
}

Eigen::Matrix2cd jacobian(const HomogeneousEndomorphism& f, const ProjPoint& p) {
    return jacobian(f, p, best_chart(p), best_chart(apply(f, p)));
}

std::vector<Preimage> preimages(const HomogeneousEndomorphism& f, const ProjPoint& q) {
    const ProductFactors* pf = f.product();
    if (!pf) fail(ErrorKind::Unsupported, "preimages are only available for product maps");
    const ChartCoords a = to_chart(q, kChartT);
    const std::vector<Root> zs = merge_roots(solve(pf->p, a[0]));
    const std::vector<Root> ws = merge_roots(solve(pf->q, a[1]));
    std::vector<Preimage> out;
    out.reserve(zs.size() * ws.size());
    for (const Root& rz : zs)
        for (const Root& rw : ws) out.push_back({ProjPoint(rz.value, rw.value, 1.0), rz.multiplicity * rw.multiplicity});
    return out;
}

}  // namespace projdyn
