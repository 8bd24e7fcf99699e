#include "mpmab/phase_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpmab::phase {
namespace {

void require_arms(int arms)
{
    if (arms < 2) {
        throw DomainError("K must be greater than 1");
    }
}

void require_delta(double delta)
{
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("delta must lie in (0,1)");
    }
}

void require_epsilon(double epsilon)
{
    if (!(epsilon > 0.0)) {
        throw DomainError("epsilon must be positive");
    }
}

Round ceil_rounds(double value)
{
    if (!std::isfinite(value)) {
        throw DomainError("phase length is not finite");
    }
    return std::max<Round>(1, static_cast<Round>(std::ceil(value)));
}

// ceil( ln(confidence) / ln(1 - 1/(4K)) ); confidence in (0,1)
Round hopping_rounds(int arms, double confidence)
{
    const double k = arms;
    return ceil_rounds(std::log(confidence) / std::log1p(-1.0 / (4.0 * k)));
}

}  // namespace

Round t_rh(int arms, double delta)
{
    require_arms(arms);
    require_delta(delta);
    return hopping_rounds(arms, delta / arms);
}

Round t_sh(int arms, int players, double epsilon, double delta)
{
    require_arms(arms);
    require_delta(delta);
    require_epsilon(epsilon);
    if (players < 1) {
        throw DomainError("N must be positive");
    }
    const double k = arms;
    return ceil_rounds(2.0 * k / (epsilon * epsilon) * std::log(4.0 * k * players / delta));
}

Round t0_st(int arms, double epsilon, double delta)
{
    require_delta(delta);
    return t_rh(arms, delta / 2.0) + t_sh(arms, arms, epsilon, delta);
}

Round t_tr_up(int arms, int players)
{
    require_arms(arms);
    if (players < 1 || players > arms) {
        throw DomainError("N must lie in [1, K]");
    }
    const double k = arms;
    const double n = players;
    return ceil_rounds((k * k - (n - 1.0) * (n - 1.0)) / 2.0 + 1.0);
}

Round t_tr_down(int arms, int players)
{
    require_arms(arms);
    if (players < 1 || players > arms) {
        throw DomainError("N must lie in [1, K]");
    }
    return static_cast<Round>(players - 1) * (arms - 1) + 1;
}

Round t0_mc(int arms, double epsilon, double delta)
{
    require_arms(arms);
    require_delta(delta);
    require_epsilon(epsilon);
    const double k = arms;
    const double ranking = 16.0 * k / (epsilon * epsilon) * std::log(4.0 * k * k / delta);
    const double estimation = k * k * std::log(4.0 / delta) / 0.02;
    return ceil_rounds(std::max(ranking, estimation));
}

Round t_ep(Round horizon, int arms, Round learning, Round trekking, double churn)
{
    require_arms(arms);
    if (horizon < 1 || learning < 1 || trekking < 0) {
        throw DomainError("T and T0 must be positive, Ttr non-negative");
    }
    if (!(churn >= 1.0)) {
        throw DomainError("churn bound x must be at least 1");
    }
    const double covered = static_cast<double>(learning + trekking);
    const double raw = std::sqrt(static_cast<double>(horizon) * arms * covered / (2.0 * churn));
    return std::max(ceil_rounds(raw), learning + trekking);
}

Round t0_dts(int arms, double churn, double epsilon, double delta)
{
    require_arms(arms);
    require_delta(delta);
    require_epsilon(epsilon);
    if (!(churn >= 0.0)) {
        throw DomainError("churn bound x must be non-negative");
    }
    const double k = arms;
    const double population = k + churn;
    const Round hopping = hopping_rounds(arms, delta / (2.0 * population));
    const Round sequential =
        ceil_rounds(2.0 * k / (epsilon * epsilon) * std::log(4.0 * k * population / delta));
    return hopping + sequential;
}

Round t_trek_cycle(int arms)
{
    require_arms(arms);
    const double half = arms / 2.0;
    return ceil_rounds(half * half + half);
}

Round t_l(Round horizon, int arms, double churn)
{
    if (horizon < 1) {
        throw DomainError("T must be positive");
    }
    if (!(churn > 0.0)) {
        throw DomainError("churn bound x must be positive");
    }
    const double cycle = static_cast<double>(t_trek_cycle(arms));
    return ceil_rounds(std::sqrt(static_cast<double>(horizon) * cycle / churn));
}

Round c_m(int arms, int players, double epsilon, double delta)
{
    require_arms(arms);
    require_delta(delta);
    require_epsilon(epsilon);
    if (players < 1) {
        throw DomainError("N must be positive");
    }
    return ceil_rounds(2.0 / (epsilon * epsilon) *
                       std::log(4.0 * arms * players / delta));
}

}  // namespace mpmab::phase
