#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/config.hpp"

namespace stripwave {

struct DetMValue {
  cplx value;
  double scale;  // sum of the magnitudes of the two terms
};

// det M continued to complex s. Even in k and k', so the square-root branches
// do not matter.
DetMValue detM_complex(const ProblemConfig& cfg, int n, cplx s);

struct Box {
  double re_lo, re_hi, im_lo, im_hi;
  std::string describe() const;
  bool contains(cplx z, double slack = 0.0) const noexcept;
};

// Argument-principle count of zeros of det M inside the box. The boundary is
// integrated adaptively; if the result is not close to an integer the edges
// are nudged outward and the count repeated. Throws WindingError naming the box.
int winding_number(const ProblemConfig& cfg, int n, const Box& box);

struct LocatedRoot {
  cplx s;
  double residual;  // |det M(s)|
  double scale;
  int newton_iters;
};

// Subdivides until each sub-box holds at most one zero, then polishes it by
// Newton. The number of roots returned equals the winding count of the box.
// Sorted by (Im z, Re z) with z = -i s.
std::vector<LocatedRoot> find_roots_in_box(const ProblemConfig& cfg, int n, const Box& box);

struct EigenvalueMap {
  cplx z;
  bool boundary;  // Re z = 0: real root, only legitimate without damping
};

// z = -i s or z = +i s, whichever has Re z > 0. Real roots are flagged as
// boundary; they raise NumericalError unless allow_boundary is set.
EigenvalueMap to_eigenvalue(cplx s_root, bool allow_boundary = false);

enum class Orientation { MinusI, PlusI };

// Compares the roots for mode n against the FD quadratic pencil and reports
// which of z = -i s, z = +i s reproduces it.
Orientation calibrate_orientation(const ProblemConfig& cfg, int n, int intervals = 300);

struct SpectrumRecord {
  int n = 0;
  cplx s_root;
  cplx z;
  double residual = 0.0;
  double scale = 0.0;
  int newton_iters = 0;
};

// Search window for the slowest-decaying family: Re s in [n pi, n pi + 2 delta]
// with delta = (pi / (1 - sigma))^2 / (2 n pi), Im s in [0, 1.25 a0].
Box quasimode_box(const ProblemConfig& cfg, int n);

// Root of smallest Re z in the quasimode box, if any.
std::optional<SpectrumRecord> least_damped_root(const ProblemConfig& cfg, int n);

// Least-squares slope of log Re z against log |Im z|.
double fit_exponent(std::span<const SpectrumRecord> records);

struct ScanResult {
  double exponent = 0.0;
  std::vector<SpectrumRecord> records;  // ordered by n
  std::vector<int> missing;             // n without a root in its box
};

ScanResult asymptotic_scan(const ProblemConfig& cfg, int n_min, int n_max, unsigned threads = 1);

// Re s of the least-damped quasimode root closest to s_target.
double resonant_frequency(const ProblemConfig& cfg, double s_target);

}  // namespace stripwave
