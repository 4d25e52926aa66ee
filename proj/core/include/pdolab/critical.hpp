#pragma once

#include <string>

namespace pdolab {

/// Largest symbol order m for which the tagged boundedness statement applies.
///
/// Tags and clause selection (`dual` picks the statement's second clause, the
/// one carrying the (n/2)max(delta-rho,0) penalty when both exist):
///   th2      sharp-maximal vs M_p, 1<p<=2.   false: -n(1-rho)/p
///            true:  -(n/p)(1-rho) - (n/2)max(delta-rho,0)
///   th3      eps-sharp vs M, 0<rho<=1:       -n(1-rho)  (either flag)
///   th5      rough-class dual bound, 0<rho<1: -n(1-rho)  (dual only)
///   lp1      L^p bound for the direct operator, 1<p<inf:
///            -n(1-rho)|1/2-1/p| - n max(delta-rho,0)/max(p,2)   (direct only)
///   lp2      L^p bound for the dual operator, 1<p<inf:
///            -n(1-rho)|1/2-1/p| - n max(delta-rho,0)(1-1/min(p,2))  (dual only)
///   weight2  weighted bound, 1<=r<=2.        false: -(n/r)(1-rho)
///            true:  -(n/r)(1-rho) - (n/2)max(delta-rho,0)
///   weight3  weighted/weak bound, 0<rho<=1:  -n(1-rho)  (either flag)
///   weight1  rough-class weighted bound, 0<rho<1: -n(1-rho)  (dual only)
///   th1,th6  H^p clauses, 0<p<=1 (th6: p<1).  false (first clause, the dual
///            operator): -n(1-rho)(1/p-1/2);  true (second clause, the direct
///            operator): -n(1-rho)(1/p-1/2) - (n/2)max(0,delta-rho)
double critical_order(const std::string& tag, int n, double p, double r, double rho, double delta,
                      bool dual);

}  // namespace pdolab
