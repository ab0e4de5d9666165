#pragma once

#include <memory>

#include "ifelab/core.hpp"

namespace ifelab {

// An interface curve carries both a signed level set (negative on the minus
// subdomain) and an explicit parametrization. The level set drives the
// root-finding for cut points; the parametrization drives arc midpoints and
// arc quadrature. Normals always point from the minus side to the plus side.
class InterfaceCurve {
  public:
    virtual ~InterfaceCurve() = default;

    virtual double level_set(const Vec2& p) const = 0;
    virtual Vec2 grad_level_set(const Vec2& p) const = 0;

    virtual Vec2 point(double t) const = 0;
    virtual Vec2 velocity(double t) const = 0;
    // Parameter of a point lying on the curve.
    virtual double param_of(const Vec2& p) const = 0;
    // Period of the parametrization for closed curves, 0 for open ones.
    virtual double period() const { return 0.0; }

    virtual double curvature_bound() const = 0;

    Vec2 normal_at(const Vec2& p) const { return grad_level_set(p).normalized(); }

    // Representative of t nearest to t_ref modulo the period.
    double param_near(double t, double t_ref) const {
        double per = period();
        if (per <= 0.0) return t;
        while (t - t_ref > 0.5 * per) t -= per;
        while (t_ref - t > 0.5 * per) t += per;
        return t;
    }
};

class CircleInterface final : public InterfaceCurve {
  public:
    CircleInterface(Vec2 center, double radius) : c_(center), r_(radius) {}

    double level_set(const Vec2& p) const override {
        Vec2 d = p - c_;
        return d.dot(d) - r_ * r_;
    }
    Vec2 grad_level_set(const Vec2& p) const override { return 2.0 * (p - c_); }
    Vec2 point(double t) const override {
        return {c_.x + r_ * std::cos(t), c_.y + r_ * std::sin(t)};
    }
    Vec2 velocity(double t) const override {
        return {-r_ * std::sin(t), r_ * std::cos(t)};
    }
    double param_of(const Vec2& p) const override {
        return std::atan2(p.y - c_.y, p.x - c_.x);
    }
    double period() const override { return 2.0 * M_PI; }
    double curvature_bound() const override { return 1.0 / r_; }

    double radius() const { return r_; }
    Vec2 center() const { return c_; }

  private:
    Vec2 c_;
    double r_;
};

// Straight interface through `origin` with unit direction `dir`. The minus
// side is the one the left normal points away from, i.e. level_set(p) =
// perp(dir) . (p - origin).
class LineInterface final : public InterfaceCurve {
  public:
    LineInterface(Vec2 origin, Vec2 dir) : o_(origin), d_(dir.normalized()) {}

    double level_set(const Vec2& p) const override { return d_.perp().dot(p - o_); }
    Vec2 grad_level_set(const Vec2&) const override { return d_.perp(); }
    Vec2 point(double t) const override { return o_ + t * d_; }
    Vec2 velocity(double) const override { return d_; }
    double param_of(const Vec2& p) const override { return d_.dot(p - o_); }
    double curvature_bound() const override { return 0.0; }

  private:
    Vec2 o_;
    Vec2 d_;
};

}  // namespace ifelab
