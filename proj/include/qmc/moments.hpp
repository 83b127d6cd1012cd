#pragma once

// Closed-form integrals over the unit polydisc against dz ^ dzbar.
//
// Per variable: int z^a zbar^b (log|z|^2)^m dz^dzbar
//   = -2 pi i (-1)^m m! / (a+1)^{m+1}   if a == b, else 0,
// and the block ordering of dz ^ dzbar contributes block_orientation_sign(n)
// for the n integrated variables.

#include "qmc/conj_algebra.hpp"
#include "qmc/exact.hpp"

namespace qmc {

struct MomentRequest {
  MultiIndex a;
  MultiIndex b;
  MultiIndex m;     // log exponents; empty means all zero
  VarSet frozen;    // variables already set to 0 and not integrated
};

ExactValue polydisc_moment(const MomentRequest& req);
ExactValue integrate_logpoly(const LogPolynomial& q, const VarSet& frozen = {});
ExactValue integrate(const ConjPolynomial& p, const VarSet& frozen = {});

/// int_{|z|<=1} |z|^{2 lambda I} |z|^{2s} (log|z|^2)^m dz^dzbar continued in
/// lambda: -2 pi i (-1)^m m! / (I lambda + s + 1)^{m+1}.  I = 0 gives a
/// constant and then requires s + 1 != 0.
RationalFunctionLambda lambda_moment(int I, int s, int m = 0);

}  // namespace qmc
