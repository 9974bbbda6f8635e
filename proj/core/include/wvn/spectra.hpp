#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wvn/closed_set.hpp"
#include "wvn/sequence.hpp"

namespace wvn {

struct SpectralParams {
  Window window = Window::symmetric(kDefaultWindowBound);
  std::uint64_t horizon = kDefaultHorizon;
  double resolution = kDefaultResolution;
};

struct SigmaBar {
  ClosedSetApprox ess;
  int unbounded_bit = 0;
  friend bool operator==(const SigmaBar&, const SigmaBar&) = default;
};

struct DiscreteEigenvalue {
  double value = 0.0;
  std::uint64_t multiplicity = 0;
  bool at_least = false;  // generator range: counted up to the horizon only
};

struct SpectrumReport {
  ClosedSetApprox spectrum;
  ClosedSetApprox essential;
  std::vector<DiscreteEigenvalue> discrete;
};

// Closure of the sampled eigenvalues, united with the declared accumulation
// set: samples within `resolution` of each other merge into intervals.
ClosedSetApprox spectrum(const OperatorSpec& a, const SpectralParams& params = {});

// Declared accumulation set plus generator-implied infinite-multiplicity
// values, clipped to the window. Throws MetadataError when the metadata fails
// the sampled consistency check.
ClosedSetApprox essential_spectrum(const OperatorSpec& a, const SpectralParams& params = {});

// Spectrum, essential spectrum and the remaining isolated eigenvalues with
// multiplicities (prefix exact; generator range counted up to the horizon).
SpectrumReport spectral_report(const OperatorSpec& a, const SpectralParams& params = {});

SigmaBar sigma_bar(const OperatorSpec& a, const SpectralParams& params = {});

// (A - i)^{-1} compact: empty essential spectrum and |a_n| -> infinity.
bool is_compact_resolvent(const OperatorSpec& a);

// Up to `count` indices n <= horizon with |a_n - lambda| < eps, in order.
std::vector<std::uint64_t> weyl_witnesses(const OperatorSpec& a, double lambda, double eps, std::size_t count,
                                          std::uint64_t horizon = kDefaultHorizon);

struct PerturbationIntersection {
  ClosedSetApprox result;
  std::vector<double> eliminated_points;  // points of spectrum(A) absent from the result
};

// Intersection of spectrum(A + K_j) over the given finite-rank diagonal
// perturbations (spectrum(A) itself when the list is empty).
PerturbationIntersection ess_via_perturbations(const OperatorSpec& a,
                                               std::span<const FiniteRankDiagonal> perturbations,
                                               const SpectralParams& params = {});

// Merge sorted-or-not samples into a closed set: runs with consecutive gaps
// <= resolution become intervals (or points when all equal).
ClosedSetApprox cluster_samples(std::span<const double> samples, Window window, double resolution);

}  // namespace wvn
