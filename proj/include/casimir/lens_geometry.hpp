#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"

namespace casimir {

enum class LensKind
{
    perfect,
    bubble,
    pit,
};

inline char const* to_string(LensKind kind)
{
    switch (kind)
    {
        case LensKind::perfect: return "perfect";
        case LensKind::bubble: return "bubble";
        case LensKind::pit: return "pit";
    }
    return "unknown";
}

/*!
 * Axisymmetric spherical lens above the plane z = 0, optionally carrying one
 * spherical-cap imperfection centred on the point of closest approach.
 *
 * - radius: lens curvature radius R
 * - thickness: lens thickness D (D = R is a hemisphere)
 * - imperfection_radius: curvature radius R1 of the bubble or pit
 * - imperfection_depth: cap height D1 of the bubble or pit
 *
 * A bubble is convex toward the plate and may be flatter (R1 > R) or sharper
 * (R1 < R) than the lens. A pit is concave, with R1 < R. All lengths in m.
 */
class LensProfile
{
  public:
    static LensProfile perfect(double radius, double thickness)
    {
        return LensProfile{LensKind::perfect, radius, thickness, 0, 0};
    }
    static LensProfile
    bubble(double radius, double thickness, double r1, double d1)
    {
        return LensProfile{LensKind::bubble, radius, thickness, r1, d1};
    }
    static LensProfile pit(double radius, double thickness, double r1, double d1)
    {
        return LensProfile{LensKind::pit, radius, thickness, r1, d1};
    }

    LensKind kind() const noexcept { return kind_; }
    double radius() const noexcept { return radius_; }
    double thickness() const noexcept { return thickness_; }
    double imperfection_radius() const noexcept { return r1_; }
    double imperfection_depth() const noexcept { return d1_; }
    bool has_imperfection() const noexcept { return kind_ != LensKind::perfect; }

    //! Radius of the lens projection onto the plate, sqrt(2 R D - D^2).
    double lateral_extent() const noexcept
    {
        return std::sqrt(thickness_ * (2 * radius_ - thickness_));
    }

  private:
    LensProfile(LensKind kind, double radius, double thickness, double r1, double d1)
        : kind_(kind), radius_(radius), thickness_(thickness), r1_(r1), d1_(d1)
    {
        if (!(radius > 0))
            throw DomainError("lens profile: curvature radius must be positive");
        if (!(thickness > 0 && thickness <= 2 * radius))
            throw DomainError("lens profile: thickness must lie in (0, 2R]");
        if (kind == LensKind::perfect)
            return;
        if (!(r1 > 0))
            throw DomainError("lens profile: imperfection radius must be positive");
        if (!(d1 > 0 && d1 < 1e-3 * radius))
        {
            throw DomainError(
                "lens profile: imperfection depth must lie in (0, 1e-3 R)");
        }
        if (kind == LensKind::pit && !(r1 < radius))
            throw DomainError("lens profile: pit radius must be below R");
    }

    LensKind kind_;
    double radius_;
    double thickness_;
    double r1_;
    double d1_;
};

//! Exact height of a sphere of radius R above its apex at lateral distance
//! rho, R - sqrt(R^2 - rho^2), in a cancellation-free form.
inline double cap_height(double radius, double rho)
{
    return rho * rho / (radius + std::sqrt((radius - rho) * (radius + rho)));
}

//! Derived footprint of a bubble or pit.
struct ImperfectionGeometry
{
    double footprint_radius = 0;  //!< r, from r^2 = 2 R1 D1 - D1^2
    double sagitta = 0;           //!< d = r^2 / (2 R)
    double offset = 0;            //!< bubble: |d - D1|; pit: d + D1
    bool spec_ok = false;         //!< 30 um <= 2 r <= 1.2 mm
};

//! Allowed footprint diameters for surface imperfections.
inline constexpr double min_footprint_diameter = 30 * units::um;
inline constexpr double max_footprint_diameter = 1.2 * units::mm;

inline ImperfectionGeometry derive_geometry(LensProfile const& profile)
{
    if (!profile.has_imperfection())
        throw DomainError("derive_geometry: perfect lens has no imperfection");

    double const r1 = profile.imperfection_radius();
    double const d1 = profile.imperfection_depth();
    double const r_sq = 2 * r1 * d1 - d1 * d1;
    // d1 > r1 would put the seam on the far hemisphere of the cap
    if (!(r_sq > 0) || d1 > r1)
    {
        throw DegenerateGeometryError(
            "derive_geometry: imperfection depth incompatible with its radius");
    }

    ImperfectionGeometry g;
    g.footprint_radius = std::sqrt(r_sq);
    g.sagitta = r_sq / (2 * profile.radius());
    g.offset = profile.kind() == LensKind::bubble ? std::abs(g.sagitta - d1)
                                                  : g.sagitta + d1;
    double const diameter = 2 * g.footprint_radius;
    g.spec_ok = diameter >= min_footprint_diameter
                && diameter <= max_footprint_diameter;
    if (g.footprint_radius > profile.lateral_extent())
    {
        throw DegenerateGeometryError(
            "derive_geometry: imperfection footprint exceeds the lens");
    }
    return g;
}

/*!
 * Lens surface height z(rho) above the plate for closest separation a.
 *
 * Inside the footprint (rho <= r) the imperfection sphere applies; outside,
 * the lens sphere shifted so the two surfaces meet at rho = r. The shift uses
 * the exact cap height of the lens over the footprint, so the surface is
 * continuous and a bubble with R1 = R reproduces the perfect lens.
 */
class SurfaceHeight
{
  public:
    SurfaceHeight(LensProfile const& profile, double a)
        : kind_(profile.kind())
        , a_(a)
        , radius_(profile.radius())
        , r1_(profile.imperfection_radius())
        , d1_(profile.imperfection_depth())
        , extent_(profile.lateral_extent())
    {
        if (!(a > 0))
            throw DomainError("surface height: separation must be positive");
        if (profile.has_imperfection())
        {
            seam_ = derive_geometry(profile).footprint_radius;
            lens_cap_ = cap_height(radius_, seam_);
        }
    }

    //! Footprint radius r; zero for a perfect lens.
    double seam() const noexcept { return seam_; }
    double extent() const noexcept { return extent_; }

    double operator()(double rho) const
    {
        switch (kind_)
        {
            case LensKind::perfect: return a_ + cap_height(radius_, rho);
            case LensKind::bubble:
                if (rho <= seam_)
                    return a_ + cap_height(r1_, rho);
                return a_ + d1_ - lens_cap_ + cap_height(radius_, rho);
            case LensKind::pit:
                if (rho <= seam_)
                    return a_ + d1_ - cap_height(r1_, rho);
                return a_ - lens_cap_ + cap_height(radius_, rho);
        }
        return a_;
    }

  private:
    LensKind kind_;
    double a_;
    double radius_;
    double r1_;
    double d1_;
    double extent_;
    double seam_ = 0;
    double lens_cap_ = 0;
};

inline double profile_height(LensProfile const& profile, double rho, double a)
{
    if (!(rho >= 0 && rho <= profile.lateral_extent()))
        throw DomainError("profile_height: rho outside the lens projection");
    return SurfaceHeight{profile, a}(rho);
}

//---------------------------------------------------------------------------//
// Optical surface specification
//---------------------------------------------------------------------------//

struct SpecCheck
{
    std::string name;
    double value = 0;
    double limit = 0;
    bool passed = false;
};

struct SpecReport
{
    std::vector<SpecCheck> checks;

    bool all_passed() const
    {
        for (auto const& c : checks)
        {
            if (!c.passed)
                return false;
        }
        return true;
    }
};

//! Default absolute error of a centimetre-scale curvature radius measurement.
inline constexpr double default_radius_error = 0.05 * units::cm;

//! Check an imperfection against the optical specification. A perfect lens
//! has no checks and passes vacuously; a degenerate cap fails outright.
inline SpecReport validate_spec(LensProfile const& profile,
                                double radius_error = default_radius_error)
{
    SpecReport report;
    if (!profile.has_imperfection())
        return report;

    double const d1 = profile.imperfection_depth();
    double diameter = 0;
    bool cap_ok = true;
    try
    {
        diameter = 2 * derive_geometry(profile).footprint_radius;
    }
    catch (DegenerateGeometryError const&)
    {
        cap_ok = false;
    }
    report.checks.push_back({"spherical_cap", d1, profile.imperfection_radius(), cap_ok});
    report.checks.push_back({"footprint_diameter_min", diameter,
                             min_footprint_diameter,
                             cap_ok && diameter >= min_footprint_diameter});
    report.checks.push_back({"footprint_diameter_max", diameter,
                             max_footprint_diameter,
                             cap_ok && diameter <= max_footprint_diameter});
    report.checks.push_back(
        {"depth_below_radius_error", d1, radius_error, d1 < radius_error});
    return report;
}

}  // namespace casimir
