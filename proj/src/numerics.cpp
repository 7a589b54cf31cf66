// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The arisgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "arisgame/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace arisgame {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

namespace numerics {

bool SmoothFunction::add_hessian(ConstVecRef, double, MatRef) const { return false; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class ClosureFunction final : public SmoothFunction {
 public:
  ClosureFunction(ValueFn v, GradientFn g, HessianFn h)
      : value_(std::move(v)), gradient_(std::move(g)), hessian_(std::move(h)) {}

  double value(ConstVecRef x) const override { return value_(RealVector(x)); }

  void gradient(ConstVecRef x, RealVector& grad) const override { grad = gradient_(RealVector(x)); }

  bool add_hessian(ConstVecRef x, double weight, MatRef hess) const override {
    if (!hessian_) return false;
    hess.noalias() += weight * hessian_(RealVector(x));
    return true;
  }

 private:
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
};

class AffineFunction final : public SmoothFunction {
 public:
  AffineFunction(RealVector c, double offset) : c_(std::move(c)), offset_(offset) {}

  double value(ConstVecRef x) const override { return c_.dot(x) + offset_; }
  void gradient(ConstVecRef, RealVector& grad) const override { grad = c_; }
  bool add_hessian(ConstVecRef, double, MatRef) const override { return true; }

 private:
  RealVector c_;
  double offset_;
};

// g(x) - shift
class ShiftedFunction final : public SmoothFunction {
 public:
  ShiftedFunction(FunctionPtr inner, double shift) : inner_(std::move(inner)), shift_(shift) {}

  double value(ConstVecRef x) const override { return inner_->value(x) - shift_; }
  void gradient(ConstVecRef x, RealVector& grad) const override { inner_->gradient(x, grad); }
  bool add_hessian(ConstVecRef x, double w, MatRef h) const override {
    return inner_->add_hessian(x, w, h);
  }

 private:
  FunctionPtr inner_;
  double shift_;
};

// Phase I lift: g(x) - s over the extended vector [x; s].
class LiftedConstraint final : public SmoothFunction {
 public:
  explicit LiftedConstraint(FunctionPtr inner) : inner_(std::move(inner)) {}

  double value(ConstVecRef xs) const override {
    const Eigen::Index n = xs.size() - 1;
    return inner_->value(xs.head(n)) - xs(n);
  }

  void gradient(ConstVecRef xs, RealVector& grad) const override {
    const Eigen::Index n = xs.size() - 1;
    inner_->gradient(xs.head(n), scratch_);
    grad.resize(n + 1);
    grad.head(n) = scratch_;
    grad(n) = -1.0;
  }

  bool add_hessian(ConstVecRef xs, double w, MatRef h) const override {
    const Eigen::Index n = xs.size() - 1;
    return inner_->add_hessian(xs.head(n), w, h.topLeftCorner(n, n));
  }

 private:
  FunctionPtr inner_;
  mutable RealVector scratch_;
};

double relative_scale(double v) { return std::max(1.0, std::abs(v)); }

// Central-difference Hessian of a function without an analytic one.
void add_fd_hessian(const SmoothFunction& f, const RealVector& x, double weight,
                    const std::vector<Eigen::Index>& free, RealMatrix& hess) {
  const Eigen::Index n = x.size();
  RealMatrix h = RealMatrix::Zero(n, n);
  RealVector xp = x, gp, gm;
  for (Eigen::Index j : free) {
    const double step = 1e-5 * std::max(1.0, std::abs(x(j)));
    xp(j) = x(j) + step;
    f.gradient(xp, gp);
    xp(j) = x(j) - step;
    f.gradient(xp, gm);
    xp(j) = x(j);
    h.col(j) = (gp - gm) / (2.0 * step);
  }
  hess.noalias() += weight * 0.5 * (h + h.transpose());
}

struct Iterate {
  RealVector x;
  double f = 0.0;
};

// Keeps the best point that satisfies the original program within tol_feas.
class BestTracker {
 public:
  BestTracker(const ConvexProgram& prog, double tol_feas) : prog_(prog), tol_feas_(tol_feas) {}

  double violation(const RealVector& x) const {
    double v = 0.0;
    for (const auto& g : prog_.constraints) v = std::max(v, g->value(x));
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      v = std::max(v, prog_.lower(j) - x(j));
      v = std::max(v, x(j) - prog_.upper(j));
    }
    return v;
  }

  void offer(const RealVector& x) {
    if (!(violation(x) <= tol_feas_)) return;
    const double f = prog_.objective->value(x);
    if (!std::isfinite(f)) return;
    if (!has_ || f > best_.f) {
      best_.x = x;
      best_.f = f;
      has_ = true;
    }
  }

  bool has() const { return has_; }
  const Iterate& best() const { return best_; }

 private:
  const ConvexProgram& prog_;
  double tol_feas_;
  Iterate best_;
  bool has_ = false;
};

struct BarrierOptions {
  double gap_tol = 1e-7;  // relative duality-gap target
  double mu = 20.0;
  double center_tol = 1e-10;
  // Each step keeps at least this fraction of every constraint slack, so
  // iterates cannot dive onto a curved boundary and crawl along it.
  double slack_keep = 0.5;
  // Phase I: stop as soon as the last coordinate drops below this value.
  bool early_stop = false;
  double early_stop_level = 0.0;
};

struct BarrierRun {
  RealVector x;
  double t = 1.0;
  bool converged = false;
  bool early_stopped = false;
};

class BarrierSolver {
 public:
  BarrierSolver(const ConvexProgram& prog, std::vector<Eigen::Index> free, int& budget,
                BestTracker* tracker)
      : prog_(prog), free_(std::move(free)), budget_(budget), tracker_(tracker) {
    m_ = static_cast<double>(prog_.constraints.size() + 2 * free_.size());
  }

  // Barrier function value; -inf outside the strict interior.
  double barrier_value(const RealVector& x, double t) const {
    double acc = 0.0;
    for (Eigen::Index j : free_) {
      const double lo = x(j) - prog_.lower(j), hi = prog_.upper(j) - x(j);
      if (!(lo > 0.0) || !(hi > 0.0)) return -kInf;
      acc += std::log(lo) + std::log(hi);
    }
    for (const auto& g : prog_.constraints) {
      const double gv = g->value(x);
      if (!(gv < 0.0)) return -kInf;
      acc += std::log(-gv);
    }
    const double f = prog_.objective->value(x);
    if (!std::isfinite(f)) return -kInf;
    return t * f + acc;
  }

  bool strictly_feasible(const RealVector& x) const {
    for (Eigen::Index j : free_)
      if (!(x(j) > prog_.lower(j)) || !(x(j) < prog_.upper(j))) return false;
    for (const auto& g : prog_.constraints)
      if (!(g->value(x) < 0.0)) return false;
    return true;
  }

  // Returns true when centered; false when the budget ran out or the line
  // search stalled.
  bool center(RealVector& x, double t, const BarrierOptions& opt, bool& early) {
    const Eigen::Index n = x.size();
    const Eigen::Index nf = static_cast<Eigen::Index>(free_.size());
    RealVector grad_f, grad_g, grad_F(n);
    RealMatrix neg_h(n, n);
    RealVector step_full(n);
    while (true) {
      if (opt.early_stop && x(n - 1) < opt.early_stop_level) {
        early = true;
        return true;
      }
      if (budget_ <= 0) return false;

      // Gradient and negated Hessian of the barrier function.
      prog_.objective->gradient(x, grad_f);
      grad_F = t * grad_f;
      neg_h.setZero();
      if (!prog_.objective->add_hessian(x, -t, neg_h)) add_fd_hessian(*prog_.objective, x, -t, free_, neg_h);
      for (const auto& g : prog_.constraints) {
        const double gv = g->value(x);
        g->gradient(x, grad_g);
        grad_F += grad_g / gv;
        const double w = 1.0 / (-gv);
        if (!g->add_hessian(x, w, neg_h)) add_fd_hessian(*g, x, w, free_, neg_h);
        add_outer(grad_g, w * w, neg_h);
      }
      for (Eigen::Index j : free_) {
        const double lo = x(j) - prog_.lower(j), hi = prog_.upper(j) - x(j);
        grad_F(j) += 1.0 / lo - 1.0 / hi;
        neg_h(j, j) += 1.0 / (lo * lo) + 1.0 / (hi * hi);
      }

      // Reduced Newton system over the free coordinates.
      RealMatrix hr(nf, nf);
      RealVector gr(nf);
      for (Eigen::Index a = 0; a < nf; ++a) {
        gr(a) = grad_F(free_[a]);
        for (Eigen::Index b = 0; b <= a; ++b) hr(a, b) = neg_h(free_[a], free_[b]);
      }
      RealVector dr = solve_spd(hr, gr);
      const double decrement = gr.dot(dr);
      --budget_;
      ++iterations_;
      if (!std::isfinite(decrement)) return false;
      if (decrement * 0.5 <= opt.center_tol) return true;

      step_full.setZero();
      for (Eigen::Index a = 0; a < nf; ++a) step_full(free_[a]) = dr(a);

      double s = 1.0;
      for (Eigen::Index j : free_) {
        const double d = step_full(j);
        if (d < 0.0) s = std::min(s, 0.99 * (x(j) - prog_.lower(j)) / -d);
        if (d > 0.0) s = std::min(s, 0.99 * (prog_.upper(j) - x(j)) / d);
      }
      const double f0 = barrier_value(x, t);
      RealVector trial(n);
      bool moved = false;
      slack_.resize(prog_.constraints.size());
      for (std::size_t i = 0; i < slack_.size(); ++i) slack_[i] = -prog_.constraints[i]->value(x);
      for (int k = 0; k < 80; ++k) {
        trial = x + s * step_full;
        const double f1 = barrier_value(trial, t);
        if (std::isfinite(f1) && f1 >= f0 + 0.25 * s * decrement && keeps_slack(trial, opt.slack_keep)) {
          moved = true;
          break;
        }
        s *= 0.5;
      }
      if (!moved) return false;
      x = trial;
      if (tracker_ != nullptr) tracker_->offer(x);
    }
  }

  BarrierRun run(RealVector x, const BarrierOptions& opt) {
    BarrierRun out;
    const double f0 = prog_.objective->value(x);
    double t = m_ / relative_scale(f0);
    if (m_ == 0.0) t = 1.0;
    while (true) {
      bool early = false;
      const bool centered = center(x, t, opt, early);
      if (early) {
        out.early_stopped = true;
        break;
      }
      const double gap = m_ / t;
      if (centered && gap <= opt.gap_tol * relative_scale(prog_.objective->value(x))) {
        out.converged = true;
        break;
      }
      if (!centered && budget_ <= 0) break;
      if (!centered) {
        // A stalled line search at large t means we are at numerical
        // precision; accept if the gap is already small.
        out.converged = gap <= 1e3 * opt.gap_tol * relative_scale(prog_.objective->value(x));
        break;
      }
      t *= opt.mu;
    }
    out.x = std::move(x);
    out.t = t;
    return out;
  }

  double constraint_count() const { return m_; }
  int iterations() const { return iterations_; }

 private:
  static void add_outer(const RealVector& g, double w, RealMatrix& h) {
    const Eigen::Index n = g.size();
    std::vector<Eigen::Index> nz;
    nz.reserve(8);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (g(i) != 0.0) {
        nz.push_back(i);
        if (static_cast<Eigen::Index>(nz.size()) * 4 > n) break;
      }
    }
    if (static_cast<Eigen::Index>(nz.size()) * 4 > n) {
      h.selfadjointView<Eigen::Lower>().rankUpdate(g, w);
      return;
    }
    for (Eigen::Index a : nz)
      for (Eigen::Index b : nz)
        if (b <= a) h(a, b) += w * g(a) * g(b);
  }

  bool keeps_slack(const RealVector& y, double fraction) const {
    for (std::size_t i = 0; i < slack_.size(); ++i)
      if (-prog_.constraints[i]->value(y) < fraction * slack_[i]) return false;
    return true;
  }

  static RealVector solve_spd(RealMatrix& lower, const RealVector& rhs) {
    const Eigen::Index n = lower.rows();
    // Mirror the lower triangle so LLT sees a symmetric matrix.
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a + 1; b < n; ++b) lower(a, b) = lower(b, a);
    double ridge = 0.0;
    const double scale = std::max(lower.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::LLT<RealMatrix> llt(lower + ridge * RealMatrix::Identity(n, n));
      if (llt.info() == Eigen::Success) {
        RealVector d = llt.solve(rhs);
        if (d.allFinite()) return d;
      }
      ridge = ridge == 0.0 ? 1e-14 * scale : ridge * 100.0;
    }
    return RealVector::Constant(n, std::numeric_limits<double>::quiet_NaN());
  }

  const ConvexProgram& prog_;
  std::vector<Eigen::Index> free_;
  int& budget_;
  BestTracker* tracker_;
  double m_ = 0.0;
  int iterations_ = 0;
  std::vector<double> slack_;
};

double max_violation(const ConvexProgram& prog, const RealVector& x) {
  double v = 0.0;
  for (const auto& g : prog.constraints) v = std::max(v, g->value(x));
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    v = std::max(v, prog.lower(j) - x(j));
    v = std::max(v, x(j) - prog.upper(j));
  }
  return v;
}

// Attempts to locate a strictly feasible point of prog starting from x.
// Returns false when the phase I optimum shows no strict interior.
bool find_interior(const ConvexProgram& prog, const std::vector<Eigen::Index>& free, RealVector& x,
                   int& budget) {
  double gmax = -kInf;
  for (const auto& g : prog.constraints) gmax = std::max(gmax, g->value(x));
  if (gmax < 0.0) return true;

  const Eigen::Index n = x.size();
  ConvexProgram lifted;
  RealVector c = RealVector::Zero(n + 1);
  c(n) = -1.0;
  lifted.objective = make_affine(c, 0.0);
  for (const auto& g : prog.constraints) lifted.constraints.push_back(std::make_shared<LiftedConstraint>(g));
  const double s0 = gmax + std::max(1e-3, 0.1 * std::abs(gmax));
  const double span = std::max(1.0, std::abs(s0));
  lifted.lower.resize(n + 1);
  lifted.upper.resize(n + 1);
  lifted.lower.head(n) = prog.lower;
  lifted.upper.head(n) = prog.upper;
  lifted.lower(n) = -1e3 * span;
  lifted.upper(n) = s0 + span;

  std::vector<Eigen::Index> lifted_free = free;
  lifted_free.push_back(n);
  RealVector xs(n + 1);
  xs.head(n) = x;
  xs(n) = s0;

  BarrierSolver phase1(lifted, lifted_free, budget, nullptr);
  BarrierOptions opt;
  opt.early_stop = true;
  opt.early_stop_level = -1e-6 * span;
  opt.gap_tol = 1e-9;
  BarrierRun run = phase1.run(xs, opt);
  RealVector cand = run.x.head(n);
  double worst = -kInf;
  for (const auto& g : prog.constraints) worst = std::max(worst, g->value(cand));
  if (worst < 0.0) {
    x = cand;
    return true;
  }
  return false;
}

}  // namespace

FunctionPtr make_function(ValueFn value, GradientFn gradient, HessianFn hessian) {
  return std::make_shared<ClosureFunction>(std::move(value), std::move(gradient), std::move(hessian));
}

FunctionPtr make_affine(RealVector coeffs, double offset) {
  return std::make_shared<AffineFunction>(std::move(coeffs), offset);
}

void SolverConfig::validate() const {
  if (!(tol_obj > 0.0) || !(tol_feas > 0.0)) throw std::invalid_argument("solver tolerances must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(ridge >= 0.0)) throw std::invalid_argument("ridge must be non-negative");
}

SolveResult maximize_concave(const ConvexProgram& prog, const RealVector& start,
                             const SolverConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = prog.dimension();
  if (!prog.objective || start.size() != n || prog.upper.size() != n)
    throw std::invalid_argument("maximize_concave: dimension mismatch");
  for (Eigen::Index j = 0; j < n; ++j)
    if (!(prog.lower(j) <= prog.upper(j)) || !std::isfinite(prog.lower(j)) || !std::isfinite(prog.upper(j)))
      throw std::invalid_argument("maximize_concave: box bounds must be finite and ordered");

  const double start_violation = max_violation(prog, start);
  if (!(start_violation <= cfg.tol_feas))
    throw InfeasibleStart("start point violates constraints by " + std::to_string(start_violation));

  if (cfg.check_gradients) {
    for (const auto* f : {&prog.objective}) {
      if (check_gradient(**f, start).max_relative_error > 1e-4)
        throw std::logic_error("objective gradient fails finite-difference check");
    }
    for (const auto& g : prog.constraints)
      if (check_gradient(*g, start).max_relative_error > 1e-4)
        throw std::logic_error("constraint gradient fails finite-difference check");
  }

  std::vector<Eigen::Index> free;
  RealVector x = start;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double width = prog.upper(j) - prog.lower(j);
    if (width <= 1e-14 * std::max(1.0, std::abs(prog.lower(j)))) {
      x(j) = prog.lower(j);
      continue;
    }
    free.push_back(j);
    const double pad = 1e-7 * width;
    x(j) = std::clamp(x(j), prog.lower(j) + pad, prog.upper(j) - pad);
  }

  BestTracker tracker(prog, cfg.tol_feas);
  tracker.offer(start);
  tracker.offer(x);

  int budget = cfg.max_iters;
  ConvexProgram relaxed_prog;
  const ConvexProgram* active = &prog;
  bool relaxed = false;
  if (!find_interior(prog, free, x, budget)) {
    relaxed_prog = prog;
    for (auto& g : relaxed_prog.constraints) g = std::make_shared<ShiftedFunction>(g, cfg.tol_feas);
    active = &relaxed_prog;
    relaxed = true;
    x = start;
    for (Eigen::Index j : free) {
      const double pad = 1e-7 * (prog.upper(j) - prog.lower(j));
      x(j) = std::clamp(x(j), prog.lower(j) + pad, prog.upper(j) - pad);
    }
    if (!find_interior(relaxed_prog, free, x, budget)) {
      SolveResult res;
      res.x = tracker.best().x;
      res.objective = tracker.best().f;
      res.iterations = cfg.max_iters - budget;
      res.max_violation = max_violation(prog, res.x);
      res.multipliers = RealVector::Zero(static_cast<Eigen::Index>(prog.constraints.size()));
      res.relaxed = true;
      return res;
    }
  }
  tracker.offer(x);

  BarrierSolver solver(*active, free, budget, &tracker);
  BarrierOptions opt;
  opt.gap_tol = 0.1 * cfg.tol_obj;
  BarrierRun run = solver.run(x, opt);

  SolveResult res;
  res.relaxed = relaxed;
  res.iterations = cfg.max_iters - budget;
  res.status = run.converged ? SolveStatus::Converged : SolveStatus::NoProgress;
  res.duality_gap = solver.constraint_count() / run.t;

  // Report multipliers and the stationarity residual at the final iterate.
  const RealVector& xf = run.x;
  RealVector grad_f, grad_g;
  prog.objective->gradient(xf, grad_f);
  RealVector stat = grad_f;
  res.multipliers.resize(static_cast<Eigen::Index>(prog.constraints.size()));
  for (std::size_t i = 0; i < active->constraints.size(); ++i) {
    const double gv = active->constraints[i]->value(xf);
    const double lambda = gv < 0.0 ? 1.0 / (run.t * -gv) : 0.0;
    res.multipliers(static_cast<Eigen::Index>(i)) = lambda;
    active->constraints[i]->gradient(xf, grad_g);
    stat -= lambda * grad_g;
  }
  for (Eigen::Index j : free) {
    stat(j) += 1.0 / (run.t * (xf(j) - prog.lower(j)));
    stat(j) -= 1.0 / (run.t * (prog.upper(j) - xf(j)));
  }
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::find(free.begin(), free.end(), j) == free.end()) stat(j) = 0.0;
  const double gscale = std::max(1.0, grad_f.cwiseAbs().maxCoeff());
  res.kkt_residual = stat.cwiseAbs().maxCoeff() / gscale;

  if (tracker.has()) {
    res.x = tracker.best().x;
    res.objective = tracker.best().f;
  } else {
    res.x = start;
    res.objective = prog.objective->value(start);
    res.status = SolveStatus::NoProgress;
  }
  res.max_violation = max_violation(prog, res.x);
  return res;
}

ComplexVector regularized_solve(const ComplexMatrix& a, const ComplexVector& b, double ridge) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw std::invalid_argument("regularized_solve: dimension mismatch");
  if (!(ridge >= 0.0)) throw std::invalid_argument("regularized_solve: ridge must be non-negative");
  const Eigen::Index n = a.rows();
  const ComplexMatrix shifted = a + ridge * ComplexMatrix::Identity(n, n);
  Eigen::LDLT<ComplexMatrix> ldlt(shifted);
  const RealVector pivots = ldlt.vectorD().real();
  const double pmax = pivots.cwiseAbs().maxCoeff();
  const double threshold = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * 16.0 * pmax;
  if (ldlt.info() != Eigen::Success || !(pmax > 0.0) || pivots.cwiseAbs().minCoeff() <= threshold)
    throw SingularMatrix("regularized_solve: matrix is numerically singular");
  ComplexVector x = ldlt.solve(b);
  // One step of iterative refinement.
  x += ldlt.solve(b - shifted * x);
  if (!x.allFinite()) throw SingularMatrix("regularized_solve: non-finite solution");
  return x;
}

GradientCheck check_gradient(const SmoothFunction& f, ConstVecRef x, double step) {
  RealVector analytic;
  f.gradient(x, analytic);
  RealVector xp = x;
  RealVector numeric(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = step * std::max(1.0, std::abs(x(j)));
    xp(j) = x(j) + h;
    const double fp = f.value(xp);
    xp(j) = x(j) - h;
    const double fm = f.value(xp);
    xp(j) = x(j);
    numeric(j) = (fp - fm) / (2.0 * h);
  }
  const double scale = std::max({analytic.cwiseAbs().maxCoeff(), numeric.cwiseAbs().maxCoeff(), 1e-12});
  GradientCheck out;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double e = std::abs(analytic(j) - numeric(j)) / scale;
    if (e > out.max_relative_error) {
      out.max_relative_error = e;
      out.worst_index = j;
    }
  }
  return out;
}

RealVector realify(const ComplexVector& z) {
  RealVector x(2 * z.size());
  x.head(z.size()) = z.real();
  x.tail(z.size()) = z.imag();
  return x;
}

ComplexVector complexify(const RealVector& x) {
  const Eigen::Index n = x.size() / 2;
  ComplexVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = cdouble(x(i), x(n + i));
  return z;
}

}  // namespace numerics
}  // namespace arisgame
