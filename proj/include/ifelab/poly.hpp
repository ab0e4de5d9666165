#pragma once

#include <vector>

#include "ifelab/core.hpp"

namespace ifelab {

// Local element frame: u = (x - center.x) / scale, v = (y - center.y) / scale.
// Polynomial coefficients are kept in these centered, scaled coordinates so
// the generalized Vandermonde solves stay well conditioned on fine meshes.
struct Frame {
    Vec2 center;
    double scale = 1.0;

    Vec2 to_local(const Vec2& p) const { return (p - center) / scale; }
    Vec2 to_physical(const Vec2& u) const { return center + u * scale; }
};

// Dense bivariate polynomial in local coordinates, triangular coefficient
// layout: index(i,j) with d = i + j is d*(d+1)/2 + j for the monomial u^i v^j.
class Poly2 {
  public:
    Poly2() : deg_(0), c_(1, 0.0) {}
    explicit Poly2(int degree) : deg_(degree), c_(size_for(degree), 0.0) {}

    static int size_for(int deg) { return (deg + 1) * (deg + 2) / 2; }
    static int index(int i, int j) {
        int d = i + j;
        return d * (d + 1) / 2 + j;
    }

    int degree() const { return deg_; }
    double coeff(int i, int j) const {
        return (i + j <= deg_) ? c_[index(i, j)] : 0.0;
    }
    double& at(int i, int j) { return c_[index(i, j)]; }

    double eval(const Vec2& u) const;
    Vec2 grad(const Vec2& u) const;  // in local coordinates

    Poly2 dx() const;
    Poly2 dy() const;
    Poly2 antiderivative_x() const;

    Poly2 operator+(const Poly2& o) const;
    Poly2 operator-(const Poly2& o) const;
    Poly2 operator*(const Poly2& o) const;
    Poly2 operator*(double s) const;
    Poly2& axpy(double a, const Poly2& o);  // *this += a * o

    double max_abs_coeff() const;

    static Poly2 constant(double v) {
        Poly2 p(0);
        p.at(0, 0) = v;
        return p;
    }
    static Poly2 linear(double c0, double cu, double cv) {
        Poly2 p(1);
        p.at(0, 0) = c0;
        p.at(1, 0) = cu;
        p.at(0, 1) = cv;
        return p;
    }

  private:
    int deg_;
    std::vector<double> c_;
};

inline Poly2 operator*(double s, const Poly2& p) { return p * s; }

}  // namespace ifelab
