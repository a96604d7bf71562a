// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace gac::bessel {

/// log I_nu(x) for x > 0, nu >= 0, computed without overflow: power series
/// below x = 20, and for larger x an asymptotic base order (0 or 1/2,
/// matching nu's fractional part) climbed with continued-fraction ratios.
double log_bessel_i(double nu, double x);

/// I_{nu+1}(x) / I_nu(x) via Perron's continued fraction (modified Lentz).
/// Stable for all x > 0; the vMF mean resultant length is
/// A_d(kappa) = bessel_ratio(d/2 - 1, kappa).
double bessel_ratio(double nu, double x);

}  // namespace gac::bessel
