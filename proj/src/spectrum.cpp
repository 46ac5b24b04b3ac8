#include "stripwave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/parallel.hpp"
#include "stripwave/wavefunctions.hpp"

namespace stripwave {

DetMValue detM_complex(const ProblemConfig& cfg, int n, cplx s) {
  if (s == cplx(0.0)) throw DomainError("detM_complex: s = 0");
  const double np = n * pi;
  const cplx k2 = (s - np) * (s + np);
  const cplx kp2 = k2 - cplx(0.0, 2.0 * cfg.a0) * s;
  const cplx k = std::sqrt(k2);
  const cplx kp = std::sqrt(kp2);
  return {wave::det_closed(k, kp, cfg.sigma), wave::det_scale(k, kp, cfg.sigma)};
}

std::string Box::describe() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "[%.12g, %.12g] x [%.12g, %.12g]i", re_lo, re_hi, im_lo, im_hi);
  return buf;
}

bool Box::contains(cplx z, double slack) const noexcept {
  return z.real() >= re_lo - slack && z.real() <= re_hi + slack && z.imag() >= im_lo - slack &&
         z.imag() <= im_hi + slack;
}

namespace {

constexpr int kEdgeSegments = 16;
constexpr int kMaxEdgeDepth = 36;
constexpr int kMaxBoxDepth = 48;

struct Point {
  cplx z;
  cplx f;
  cplx dlog;  // f'/f
};

class DetFunction {
 public:
  DetFunction(const ProblemConfig& cfg, int n) : cfg_(cfg), n_(n) {}

  cplx value(cplx s) const { return detM_complex(cfg_, n_, s).value; }

  cplx derivative(cplx s) const {
    const double h = 1e-6 * std::abs(s);
    return (value(s + h) - value(s - h)) / (2.0 * h);
  }

  Point point(cplx s) const {
    const cplx f = value(s);
    return {s, f, derivative(s) / f};
  }

 private:
  const ProblemConfig& cfg_;
  int n_;
};

// Change of arg f along [a, b]. A piece is accepted once the principal arg of
// f(b)/f(a) is small and agrees with the trapezoid estimate of Im int f'/f.
bool edge_arg(const DetFunction& f, const Point& a, const Point& b, int depth, double& out) {
  if (a.f == cplx(0.0) || b.f == cplx(0.0)) return false;
  const double dphi = std::arg(b.f / a.f);
  const double trap = (0.5 * (b.z - a.z) * (a.dlog + b.dlog)).imag();
  if (std::abs(dphi) < pi / 3.0 && std::abs(trap - dphi) < 0.05) {
    out += dphi;
    return true;
  }
  if (depth >= kMaxEdgeDepth) return false;
  const Point m = f.point(0.5 * (a.z + b.z));
  return edge_arg(f, a, m, depth + 1, out) && edge_arg(f, m, b, depth + 1, out);
}

std::optional<int> try_count(const DetFunction& f, const Box& box) {
  const cplx corners[4] = {{box.re_lo, box.im_lo}, {box.re_hi, box.im_lo},
                           {box.re_hi, box.im_hi}, {box.re_lo, box.im_hi}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx za = corners[e], zb = corners[(e + 1) % 4];
    Point prev = f.point(za);
    for (int i = 1; i <= kEdgeSegments; ++i) {
      const Point cur = f.point(za + (zb - za) * (double(i) / kEdgeSegments));
      if (!edge_arg(f, prev, cur, 0, total)) return std::nullopt;
      prev = cur;
    }
  }
  const double w = total / (2.0 * pi);
  const double r = std::round(w);
  if (std::abs(w - r) > 0.05 || r < 0.0) return std::nullopt;
  return int(r);
}

struct Counted {
  Box box;
  int count;
};

Counted count_with_jitter(const DetFunction& f, const Box& box) {
  const double dw = box.re_hi - box.re_lo, dh = box.im_hi - box.im_lo;
  static constexpr double kNudge[] = {0.0, 1.7e-6, 3.1e-5, 4.3e-4};
  for (double t : kNudge) {
    Box b{box.re_lo - t * dw, box.re_hi + 1.3 * t * dw, box.im_lo - 0.7 * t * dh, box.im_hi + 1.1 * t * dh};
    if (auto c = try_count(f, b)) return {b, *c};
  }
  throw WindingError("argument principle did not settle on an integer for box " + box.describe());
}

std::optional<LocatedRoot> newton(const DetFunction& f, const ProblemConfig& cfg, int n, cplx s0) {
  cplx s = s0;
  int it = 0;
  bool converged = false;
  for (; it < 60; ++it) {
    const cplx df = f.derivative(s);
    if (df == cplx(0.0)) return std::nullopt;
    const cplx ds = f.value(s) / df;
    s -= ds;
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) return std::nullopt;
    if (std::abs(ds) <= 1e-14 * std::max(1.0, std::abs(s))) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged) return std::nullopt;
  const auto d = detM_complex(cfg, n, s);
  const cplx extra = d.value / f.derivative(s);
  if (std::abs(d.value) > 1e-10 * d.scale || std::abs(extra) > 1e-12 * std::max(1.0, std::abs(s)))
    return std::nullopt;
  return LocatedRoot{s, std::abs(d.value), d.scale, it};
}

void search(const DetFunction& f, const ProblemConfig& cfg, int n, const Box& box, int count, int depth,
            std::vector<LocatedRoot>& out) {
  if (count == 0) return;
  const double dw = box.re_hi - box.re_lo, dh = box.im_hi - box.im_lo;
  if (count == 1) {
    const cplx centre(0.5 * (box.re_lo + box.re_hi), 0.5 * (box.im_lo + box.im_hi));
    if (auto r = newton(f, cfg, n, centre); r && box.contains(r->s, 1e-9 * std::max(dw, dh))) {
      out.push_back(*r);
      return;
    }
  }
  if (depth >= kMaxBoxDepth)
    throw WindingError("box subdivision did not isolate roots in " + box.describe());

  // Split the long side; move the cut if it passes too close to a root.
  static constexpr double kCut[] = {0.5, 0.5123, 0.4791, 0.5377};
  for (double c : kCut) {
    Box a = box, b = box;
    if (dw >= dh) {
      a.re_hi = b.re_lo = box.re_lo + c * dw;
    } else {
      a.im_hi = b.im_lo = box.im_lo + c * dh;
    }
    const auto ca = try_count(f, a);
    const auto cb = try_count(f, b);
    if (!ca || !cb || *ca + *cb != count) continue;
    search(f, cfg, n, a, *ca, depth + 1, out);
    search(f, cfg, n, b, *cb, depth + 1, out);
    return;
  }
  throw WindingError("winding counts of the halves do not add up for box " + box.describe());
}

}  // namespace

int winding_number(const ProblemConfig& cfg, int n, const Box& box) {
  const DetFunction f(cfg, n);
  return count_with_jitter(f, box).count;
}

std::vector<LocatedRoot> find_roots_in_box(const ProblemConfig& cfg, int n, const Box& box) {
  cfg.validate();
  if (n < 1) throw DomainError("mode index n must be >= 1");
  if (!(box.re_hi > box.re_lo && box.im_hi > box.im_lo)) throw DomainError("degenerate box " + box.describe());
  if (box.contains(0.0)) throw DomainError("box contains s = 0");
  const DetFunction f(cfg, n);
  const auto counted = count_with_jitter(f, box);
  std::vector<LocatedRoot> roots;
  search(f, cfg, n, counted.box, counted.count, 0, roots);
  std::sort(roots.begin(), roots.end(), [](const LocatedRoot& x, const LocatedRoot& y) {
    // z = -i s: Im z = -Re s, Re z = Im s
    if (x.s.real() != y.s.real()) return -x.s.real() < -y.s.real();
    return x.s.imag() < y.s.imag();
  });
  return roots;
}

EigenvalueMap to_eigenvalue(cplx s_root, bool allow_boundary) {
  const double tiny = 1e-13 * std::max(1.0, std::abs(s_root));
  if (std::abs(s_root.imag()) <= tiny) {
    if (!allow_boundary) throw NumericalError("real root maps to Re z = 0 with damping present");
    return {cplx(0.0, -s_root.real()), true};
  }
  const cplx z = s_root.imag() > 0.0 ? cplx(0.0, -1.0) * s_root : cplx(0.0, 1.0) * s_root;
  return {z, false};
}

Orientation calibrate_orientation(const ProblemConfig& cfg, int n, int intervals) {
  const auto roots = find_roots_in_box(cfg, n, quasimode_box(cfg, n));
  if (roots.empty()) throw NumericalError("calibrate_orientation: no roots to compare");
  const auto fd = eigs_quadratic(cfg, n, aligned_intervals(cfg.sigma, intervals));
  auto miss = [&](cplx rot) {
    double worst = 0.0;
    for (const auto& r : roots) {
      const cplx z = rot * r.s;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& e : fd) best = std::min(best, std::abs(e - z) / std::abs(z));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return miss(cplx(0.0, -1.0)) <= miss(cplx(0.0, 1.0)) ? Orientation::MinusI : Orientation::PlusI;
}

Box quasimode_box(const ProblemConfig& cfg, int n) {
  const double k1 = pi / (1.0 - std::min(cfg.sigma, 0.999));
  const double delta = k1 * k1 / (2.0 * n * pi);
  return {n * pi, n * pi + 2.0 * delta, 0.0, 1.25 * cfg.a0};
}

std::optional<SpectrumRecord> least_damped_root(const ProblemConfig& cfg, int n) {
  const auto roots = find_roots_in_box(cfg, n, quasimode_box(cfg, n));
  if (roots.empty()) return std::nullopt;
  const auto best = std::min_element(roots.begin(), roots.end(), [](const LocatedRoot& x, const LocatedRoot& y) {
    return x.s.imag() != y.s.imag() ? x.s.imag() < y.s.imag() : x.s.real() < y.s.real();
  });
  SpectrumRecord rec;
  rec.n = n;
  rec.s_root = best->s;
  rec.z = to_eigenvalue(best->s, cfg.undamped()).z;
  rec.residual = best->residual;
  rec.scale = best->scale;
  rec.newton_iters = best->newton_iters;
  return rec;
}

double fit_exponent(std::span<const SpectrumRecord> records) {
  if (records.size() < 2) throw DomainError("fit_exponent: needs at least 2 records");
  double mx = 0.0, my = 0.0;
  for (const auto& r : records) {
    if (!(r.z.real() > 0.0)) throw DomainError("fit_exponent: Re z must be positive");
    mx += std::log(std::abs(r.z.imag()));
    my += std::log(r.z.real());
  }
  mx /= double(records.size());
  my /= double(records.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : records) {
    const double dx = std::log(std::abs(r.z.imag())) - mx;
    sxy += dx * (std::log(r.z.real()) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ScanResult asymptotic_scan(const ProblemConfig& cfg, int n_min, int n_max, unsigned threads) {
  cfg.validate();
  if (cfg.undamped()) throw DomainError("asymptotic_scan: degenerate, a0 = 0 gives Re z = 0 for every root");
  if (n_min < 3 || n_max < n_min) throw DomainError("asymptotic_scan: needs 3 <= n_min <= n_max");
  const std::size_t count = std::size_t(n_max - n_min + 1);
  std::vector<std::optional<SpectrumRecord>> found(count);
  parallel_for(count, threads, [&](std::size_t i) { found[i] = least_damped_root(cfg, n_min + int(i)); });

  ScanResult out;
  for (std::size_t i = 0; i < count; ++i) {
    if (found[i]) out.records.push_back(*found[i]);
    else out.missing.push_back(n_min + int(i));
  }
  if (out.records.size() < 6) throw DomainError("asymptotic_scan: insufficient data, fewer than 6 roots");
  out.exponent = fit_exponent(out.records);
  return out;
}

double resonant_frequency(const ProblemConfig& cfg, double s_target) {
  const int n0 = std::max(1, int(std::lround(s_target / pi)));
  double best = std::numeric_limits<double>::quiet_NaN();
  for (int n = std::max(1, n0 - 1); n <= n0 + 1; ++n) {
    const auto rec = least_damped_root(cfg, n);
    if (!rec) continue;
    const double re = rec->s_root.real();
    if (std::isnan(best) || std::abs(re - s_target) < std::abs(best - s_target)) best = re;
  }
  if (std::isnan(best)) throw NumericalError("resonant_frequency: no quasimode root near target");
  return best;
}

}  // namespace stripwave
