#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

/*!
 * \file metrology.hpp
 * Combination of random and systematic measurement errors.
 *
 * Systematic components combine as min(sum, k * sqrt(sum of squares)). The
 * total error then follows from r = Delta_s / s_mean:
 *   r < 0.8        Delta_t = Delta_r
 *   r > 8          Delta_t = Delta_s
 *   0.8 <= r <= 8  Delta_t = q(r) (Delta_r + Delta_s)
 */

namespace casimir::metrology {

enum class ErrorRule
{
    random_dominates,
    systematic_dominates,
    blend,
};

inline char const* to_string(ErrorRule rule)
{
    switch (rule)
    {
        case ErrorRule::random_dominates: return "RandomDominates";
        case ErrorRule::systematic_dominates: return "SystematicDominates";
        case ErrorRule::blend: return "Blend";
    }
    return "unknown";
}

inline constexpr double random_limit = 0.8;
inline constexpr double systematic_limit = 8.0;

namespace detail {
inline bool same_beta(double lhs, double rhs)
{
    return std::abs(lhs - rhs) <= 1e-12;
}
}  // namespace detail

//! k_beta^(J) coefficients keyed by (J, beta).
class KTable
{
  public:
    //! Only the tabulated value k_0.95^(3) = 1.1.
    static KTable with_defaults()
    {
        KTable t;
        t.set(3, 0.95, 1.1);
        return t;
    }

    void set(int components, double beta, double k)
    {
        if (components < 1)
            throw DomainError("k table: J must be at least 1");
        if (!(beta > 0 && beta < 1))
            throw DomainError("k table: beta must lie in (0, 1)");
        if (!(k > 0))
            throw DomainError("k table: coefficient must be positive");
        for (auto& e : entries_)
        {
            if (e.components == components && detail::same_beta(e.beta, beta))
            {
                e.k = k;
                return;
            }
        }
        entries_.push_back({components, beta, k});
    }

    std::optional<double> find(int components, double beta) const
    {
        for (auto const& e : entries_)
        {
            if (e.components == components && detail::same_beta(e.beta, beta))
                return e.k;
        }
        return std::nullopt;
    }

    std::size_t size() const { return entries_.size(); }

  private:
    struct Entry
    {
        int components;
        double beta;
        double k;
    };
    std::vector<Entry> entries_;
};

enum class Interpolation
{
    linear,
    nearest,
    exact,
};

/*!
 * Tabulated q_beta(r) at a single confidence level.
 *
 * Lookups outside the tabulated r range, or with no exact match under
 * Interpolation::exact, raise ConfigurationError. Nothing is extrapolated.
 */
class QTable
{
  public:
    QTable() = default;
    QTable(double beta, Interpolation mode = Interpolation::linear)
        : beta_(beta), mode_(mode)
    {
        if (!(beta > 0 && beta < 1))
            throw DomainError("q table: beta must lie in (0, 1)");
    }

    void add(double r, double q)
    {
        if (!(r >= 0))
            throw DomainError("q table: r must be non-negative");
        if (!(q > 0))
            throw DomainError("q table: coefficient must be positive");
        if (beta_ && detail::same_beta(*beta_, 0.95) && (q < 0.71 || q > 0.81))
            throw DomainError("q table: q_0.95 must lie in [0.71, 0.81]");
        auto it = std::lower_bound(points_.begin(), points_.end(), r,
                                   [](auto const& p, double x) { return p.first < x; });
        if (it != points_.end() && it->first == r)
            it->second = q;
        else
            points_.insert(it, {r, q});
    }

    std::optional<double> beta() const { return beta_; }
    Interpolation interpolation() const { return mode_; }
    bool empty() const { return points_.empty(); }
    std::vector<std::pair<double, double>> const& points() const { return points_; }

    double lookup(double r, double beta) const
    {
        if (!beta_ || !detail::same_beta(*beta_, beta))
            throw ConfigurationError(missing(r, beta));
        if (points_.empty() || r < points_.front().first
            || r > points_.back().first)
        {
            throw ConfigurationError(missing(r, beta));
        }
        auto hi = std::lower_bound(points_.begin(), points_.end(), r,
                                   [](auto const& p, double x) { return p.first < x; });
        if (hi->first == r)
            return hi->second;
        if (mode_ == Interpolation::exact)
            throw ConfigurationError(missing(r, beta));
        auto lo = std::prev(hi);
        if (mode_ == Interpolation::nearest)
            return (r - lo->first <= hi->first - r) ? lo->second : hi->second;
        double const w = (r - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    }

  private:
    static std::string missing(double r, double beta)
    {
        return "no q coefficient for r = " + std::to_string(r)
               + " at beta = " + std::to_string(beta)
               + "; supply a q table covering this ratio";
    }

    std::optional<double> beta_;
    Interpolation mode_ = Interpolation::linear;
    std::vector<std::pair<double, double>> points_;
};

//! Inputs for one measured point. Magnitudes share the measured quantity's
//! units; measured_value is |Pi| and is only needed for relative errors.
struct ErrorBudget
{
    double random_error = 0;
    std::vector<double> systematic_components;
    double variance_of_mean = 0;
    double beta = 0.95;
    std::optional<double> k_override;
    std::optional<double> measured_value;
    KTable k_table = KTable::with_defaults();
    QTable q_table;
};

struct RuleSelection
{
    double ratio = 0;
    ErrorRule rule = ErrorRule::blend;
};

struct CombinedError
{
    double total = 0;
    std::optional<double> relative;
    ErrorRule rule = ErrorRule::blend;
    double systematic = 0;  //!< combined Delta_s
    double ratio = 0;       //!< r = Delta_s / s_mean
};

//! min(sum, k * sqrt(sum of squares)) over the J = components.size() inputs.
inline double combine_systematic(std::span<double const> components, double k)
{
    if (components.empty())
        throw DomainError("combine_systematic: no systematic components");
    if (!(k > 0))
        throw DomainError("combine_systematic: k must be positive");
    double sum = 0;
    double sum_sq = 0;
    for (double c : components)
    {
        if (!(c >= 0))
            throw DomainError("combine_systematic: components must be >= 0");
        sum += c;
        sum_sq += c * c;
    }
    return std::min(sum, k * std::sqrt(sum_sq));
}

//! Both regime boundaries belong to the blend rule.
inline RuleSelection select_rule(double systematic, double variance_of_mean)
{
    if (!(variance_of_mean > 0))
        throw DegenerateBudgetError("select_rule: variance of the mean must be positive");
    if (!(systematic >= 0))
        throw DomainError("select_rule: systematic error must be >= 0");
    RuleSelection sel;
    sel.ratio = systematic / variance_of_mean;
    if (sel.ratio < random_limit)
        sel.rule = ErrorRule::random_dominates;
    else if (sel.ratio > systematic_limit)
        sel.rule = ErrorRule::systematic_dominates;
    else
        sel.rule = ErrorRule::blend;
    return sel;
}

inline double resolve_k(ErrorBudget const& budget)
{
    if (budget.k_override)
        return *budget.k_override;
    int const j = static_cast<int>(budget.systematic_components.size());
    if (auto k = budget.k_table.find(j, budget.beta))
        return *k;
    throw ConfigurationError("no k coefficient for J = " + std::to_string(j)
                             + " at beta = " + std::to_string(budget.beta)
                             + "; supply k or a k table entry");
}

inline CombinedError total_error(ErrorBudget const& budget)
{
    if (!(budget.random_error >= 0))
        throw DomainError("total_error: random error must be >= 0");
    if (!(budget.beta > 0 && budget.beta < 1))
        throw DomainError("total_error: beta must lie in (0, 1)");

    CombinedError out;
    out.systematic = combine_systematic(budget.systematic_components,
                                        resolve_k(budget));
    auto const sel = select_rule(out.systematic, budget.variance_of_mean);
    out.ratio = sel.ratio;
    out.rule = sel.rule;
    switch (sel.rule)
    {
        case ErrorRule::random_dominates: out.total = budget.random_error; break;
        case ErrorRule::systematic_dominates: out.total = out.systematic; break;
        case ErrorRule::blend:
            out.total = budget.q_table.lookup(sel.ratio, budget.beta)
                        * (budget.random_error + out.systematic);
            break;
    }
    if (budget.measured_value)
    {
        if (!(*budget.measured_value != 0))
            throw DomainError("total_error: measured value must be non-zero");
        out.relative = out.total / std::abs(*budget.measured_value);
    }
    return out;
}

}  // namespace casimir::metrology
