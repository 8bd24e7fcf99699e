#pragma once

#include <cstdint>
#include <stdexcept>

#include "mpmab/types.hpp"

// Closed-form phase lengths and thresholds for the trekking algorithms and the
// musical-chairs baseline. Every duration is a round count: each closed-form
// term is ceiled, and all logarithms are natural.

namespace mpmab::phase {

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Random-hopping length after which all players are orthogonal w.p. >= 1-delta:
/// ceil( ln(delta/K) / ln(1 - 1/(4K)) ).
Round t_rh(int arms, double delta);

/// Sequential-hopping length: ceil( (2K/eps^2) ln(4KN/delta) ).
Round t_sh(int arms, int players, double epsilon, double delta);

/// Learning length of static trekking with N replaced by K:
/// t_rh(K, delta/2) + ceil( (2K/eps^2) ln(4K^2/delta) ).
Round t0_st(int arms, double epsilon, double delta);

/// Upward trekking settling bound: ceil( (K^2 - (N-1)^2)/2 + 1 ).
Round t_tr_up(int arms, int players);

/// Downward trekking settling bound: (N-1)(K-1) + 1.
Round t_tr_down(int arms, int players);

/// Musical-chairs learning length:
/// ceil( max( (16K/eps^2) ln(4K^2/delta), K^2 ln(4/delta) / 0.02 ) ).
Round t0_mc(int arms, double epsilon, double delta);

/// Epoch length ceil( sqrt(T K (T0+Ttr) / (2x)) ), never shorter than T0+Ttr.
Round t_ep(Round horizon, int arms, Round learning, Round trekking, double churn);

/// Learning length of the sensing variant:
/// ceil( ln(delta/(2(K+x))) / ln(1-1/(4K)) ) + ceil( (2K/eps^2) ln(4K(K+x)/delta) ).
Round t0_dts(int arms, double churn, double epsilon, double delta);

/// Longest trekking excursion of the sensing variant: ceil( (K/2)^2 + K/2 ).
Round t_trek_cycle(int arms);

/// Lock period of the sensing variant: ceil( sqrt(T * t_trek_cycle(K) / x) ).
Round t_l(Round horizon, int arms, double churn);

/// Per-arm sample count for an epsilon-correct ranking:
/// ceil( (2/eps^2) ln(4KN/delta) ).
Round c_m(int arms, int players, double epsilon, double delta);

}  // namespace mpmab::phase
