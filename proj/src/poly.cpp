#include "ifelab/poly.hpp"

#include <algorithm>

namespace ifelab {

double Poly2::eval(const Vec2& p) const {
    // Horner over total degree: sum_d sum_{i+j=d} c_ij u^i v^j.
    double result = 0.0;
    std::vector<double> upow(deg_ + 1, 1.0), vpow(deg_ + 1, 1.0);
    for (int k = 1; k <= deg_; ++k) {
        upow[k] = upow[k - 1] * p.x;
        vpow[k] = vpow[k - 1] * p.y;
    }
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; i + j <= deg_; ++j)
            result += c_[index(i, j)] * upow[i] * vpow[j];
    return result;
}

Vec2 Poly2::grad(const Vec2& p) const { return {dx().eval(p), dy().eval(p)}; }

Poly2 Poly2::dx() const {
    Poly2 r(std::max(deg_ - 1, 0));
    for (int i = 1; i <= deg_; ++i)
        for (int j = 0; i + j <= deg_; ++j)
            r.at(i - 1, j) += i * c_[index(i, j)];
    return r;
}

Poly2 Poly2::dy() const {
    Poly2 r(std::max(deg_ - 1, 0));
    for (int i = 0; i <= deg_; ++i)
        for (int j = 1; i + j <= deg_; ++j)
            r.at(i, j - 1) += j * c_[index(i, j)];
    return r;
}

Poly2 Poly2::antiderivative_x() const {
    Poly2 r(deg_ + 1);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; i + j <= deg_; ++j)
            r.at(i + 1, j) = c_[index(i, j)] / (i + 1);
    return r;
}

Poly2 Poly2::operator+(const Poly2& o) const {
    Poly2 r(std::max(deg_, o.deg_));
    for (int i = 0; i <= r.deg_; ++i)
        for (int j = 0; i + j <= r.deg_; ++j)
            r.at(i, j) = coeff(i, j) + o.coeff(i, j);
    return r;
}

Poly2 Poly2::operator-(const Poly2& o) const {
    Poly2 r(std::max(deg_, o.deg_));
    for (int i = 0; i <= r.deg_; ++i)
        for (int j = 0; i + j <= r.deg_; ++j)
            r.at(i, j) = coeff(i, j) - o.coeff(i, j);
    return r;
}

Poly2 Poly2::operator*(const Poly2& o) const {
    Poly2 r(deg_ + o.deg_);
    for (int i = 0; i <= deg_; ++i)
        for (int j = 0; i + j <= deg_; ++j) {
            double cij = c_[index(i, j)];
            if (cij == 0.0) continue;
            for (int k = 0; k <= o.deg_; ++k)
                for (int l = 0; k + l <= o.deg_; ++l)
                    r.at(i + k, j + l) += cij * o.coeff(k, l);
        }
    return r;
}

Poly2 Poly2::operator*(double s) const {
    Poly2 r = *this;
    for (double& v : r.c_) v *= s;
    return r;
}

Poly2& Poly2::axpy(double a, const Poly2& o) {
    if (o.deg_ > deg_) {
        Poly2 grown(o.deg_);
        for (int i = 0; i <= deg_; ++i)
            for (int j = 0; i + j <= deg_; ++j)
                grown.at(i, j) = c_[index(i, j)];
        *this = grown;
    }
    for (int i = 0; i <= o.deg_; ++i)
        for (int j = 0; i + j <= o.deg_; ++j)
            at(i, j) += a * o.coeff(i, j);
    return *this;
}

double Poly2::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ifelab
