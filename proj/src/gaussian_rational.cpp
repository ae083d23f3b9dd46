#include "rigidity/gaussian_rational.hpp"

#include "rigidity/errors.hpp"

namespace rigidity {

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw InvalidArgument("division by zero in Q(i)");
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

mpz_class GaussianRational::denominator_lcm() const {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), re_.get_den_mpz_t(), im_.get_den_mpz_t());
    return l;
}

namespace {

std::optional<mpz_class> exact_isqrt(const mpz_class& v) {
    if (sgn(v) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(v.get_mpz_t())) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace

std::optional<GaussianRational> GaussianRational::sqrt() const {
    if (is_zero()) return GaussianRational{};
    // q = z / m^2 with z a Gaussian integer; a root of q lies in Q(i) iff z is a
    // square in Z[i].
    mpz_class m = denominator_lcm();
    mpq_class mq(m);
    mpq_class xr = re_ * mq * mq;
    mpq_class yr = im_ * mq * mq;
    mpz_class x = xr.get_num();
    mpz_class y = yr.get_num();
    auto n = exact_isqrt(x * x + y * y);
    if (!n) return std::nullopt;
    mpz_class twice_u2 = *n + x;
    mpz_class twice_v2 = *n - x;
    if (mpz_odd_p(twice_u2.get_mpz_t()) || mpz_odd_p(twice_v2.get_mpz_t())) return std::nullopt;
    auto u = exact_isqrt(twice_u2 / 2);
    auto v = exact_isqrt(twice_v2 / 2);
    if (!u || !v) return std::nullopt;
    mpz_class vv = sgn(y) < 0 ? mpz_class(-*v) : *v;
    GaussianRational root(mpq_class(*u, m), mpq_class(vv, m));
    if (root * root != *this) return std::nullopt;
    return root;
}

std::string GaussianRational::to_string() const {
    if (is_real()) return re_.get_str();
    std::string im_part;
    if (im_ == 1) {
        im_part = "i";
    } else if (im_ == -1) {
        im_part = "-i";
    } else {
        im_part = im_.get_str() + "i";
    }
    if (sgn(re_) == 0) return im_part;
    std::string out = re_.get_str();
    if (sgn(im_) > 0) out += "+";
    return out + im_part;
}

}  // namespace rigidity
