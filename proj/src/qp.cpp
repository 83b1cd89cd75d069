#include "mgrid/qp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

namespace mgrid {

namespace {

struct KktSolver {
  // Factorizes [H+G'WG, A'; A, 0] for fixed W via the Schur complement.
  const QpProblem& p;
  double reg;
  Eigen::LLT<Mat> lltM;
  Eigen::LLT<Mat> lltS;
  Mat AMinvAt;

  explicit KktSolver(const QpProblem& prob, double regularization)
      : p(prob), reg(regularization) {}

  bool factorize(const Vec& w_scale) {
    const int n = p.n();
    Mat M = Mat::Zero(n, n);
    if (p.n_ineq() > 0)
      M.noalias() = p.G.transpose() * w_scale.asDiagonal() * p.G;
    M.diagonal() += p.q_diag;
    M.diagonal().array() += reg;
    lltM.compute(M);
    if (lltM.info() != Eigen::Success) return false;
    if (p.n_eq() > 0) {
      Mat MinvAt = lltM.solve(p.A.transpose());
      AMinvAt.noalias() = p.A * MinvAt;
      AMinvAt.diagonal().array() += reg;
      lltS.compute(AMinvAt);
      if (lltS.info() != Eigen::Success) return false;
    }
    return true;
  }

  // Solves M dz + A' dy = r1, A dz = r2.
  void solve(const Vec& r1, const Vec& r2, Vec& dz, Vec& dy) const {
    if (p.n_eq() == 0) {
      dz = lltM.solve(r1);
      dy.resize(0);
      return;
    }
    Vec Minv_r1 = lltM.solve(r1);
    dy = lltS.solve(p.A * Minv_r1 - r2);
    dz = lltM.solve(r1 - p.A.transpose() * dy);
  }
};

double max_step(const Vec& v, const Vec& dv) {
  double alpha = 1.0;
  for (int i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

}  // namespace

QpResult solve_qp(const QpProblem& p, const QpOptions& opts) {
  QpResult res;
  const int n = p.n();
  const int me = p.n_eq();
  const int mi = p.n_ineq();
  if (n == 0) {
    res.ok = true;
    res.z.resize(0);
    res.y.resize(0);
    res.lambda.resize(0);
    return res;
  }
  if ((me > 0 && (p.A.rows() != me || p.A.cols() != n)) ||
      (mi > 0 && (p.G.rows() != mi || p.G.cols() != n)) ||
      p.q_diag.size() != n)
    throw Error(ErrorCode::invalid_argument, "inconsistent QP dimensions");

  double scale = 1.0 + p.g.cwiseAbs().maxCoeff();
  if (me > 0) scale = std::max(scale, 1.0 + p.b.cwiseAbs().maxCoeff());
  if (mi > 0) scale = std::max(scale, 1.0 + p.h.cwiseAbs().maxCoeff());
  const double reg = 1e-11 * (1.0 + p.q_diag.maxCoeff());
  const double tol = opts.tolerance * scale;

  KktSolver kkt(p, reg);

  // Pure equality-constrained case: one Newton solve is exact.
  if (mi == 0) {
    if (!kkt.factorize(Vec::Zero(0)))
      { res.message = "KKT factorization failed"; return res; }
    Vec dz, dy;
    kkt.solve(-p.g, me > 0 ? Vec(p.b) : Vec(), dz, dy);
    res.z = dz;
    res.y = dy;
    res.lambda.resize(0);
    res.objective = 0.5 * dz.dot(p.q_diag.cwiseProduct(dz)) + p.g.dot(dz);
    Vec rd = p.q_diag.cwiseProduct(dz) + p.g;
    if (me > 0) rd += p.A.transpose() * dy;
    res.kkt_residual = rd.cwiseAbs().maxCoeff();
    if (me > 0)
      res.kkt_residual = std::max(res.kkt_residual,
                                  (p.A * dz - p.b).cwiseAbs().maxCoeff());
    res.ok = res.kkt_residual <= 1e3 * tol;
    if (!res.ok) res.message = "equality KKT residual too large";
    res.iterations = 1;
    return res;
  }

  // Starting point.
  Vec z = Vec::Zero(n);
  Vec y = Vec::Zero(me);
  if (me > 0) {
    // Least-norm point satisfying A z = b.
    Eigen::LLT<Mat> llt((p.A * p.A.transpose() +
                         reg * Mat::Identity(me, me)).eval());
    if (llt.info() == Eigen::Success)
      z = p.A.transpose() * llt.solve(p.b);
  }
  Vec s(mi), lambda = Vec::Ones(mi);
  {
    Vec slack = p.h - p.G * z;
    for (int i = 0; i < mi; ++i) s(i) = std::max(1.0, slack(i));
  }

  double best_kkt = 1e300;
  int stall = 0;
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    Vec rd = p.q_diag.cwiseProduct(z) + p.g + p.G.transpose() * lambda;
    if (me > 0) rd += p.A.transpose() * y;
    Vec rp = me > 0 ? Vec(p.A * z - p.b) : Vec();
    Vec rg = p.G * z + s - p.h;
    double mu = s.dot(lambda) / double(mi);
    double kkt_now = rd.cwiseAbs().maxCoeff();
    if (me > 0 && rp.size() > 0)
      kkt_now = std::max(kkt_now, rp.cwiseAbs().maxCoeff());
    kkt_now = std::max(kkt_now, rg.cwiseAbs().maxCoeff());
    double comp = 0.0;
    for (int i = 0; i < mi; ++i) comp = std::max(comp, s(i) * lambda(i));

    res.iterations = iter;
    if (kkt_now <= tol && comp <= tol) {
      res.ok = true;
      res.kkt_residual = std::max(kkt_now, comp);
      break;
    }
    if (kkt_now + mu < best_kkt * 0.9999) {
      best_kkt = kkt_now + mu;
      stall = 0;
    } else if (++stall > 12) {
      res.message = "interior point stalled (likely infeasible)";
      res.kkt_residual = std::max(kkt_now, comp);
      break;
    }

    Vec w = lambda.cwiseQuotient(s);
    if (!kkt.factorize(w)) {
      res.message = "KKT factorization failed";
      break;
    }

    // Affine predictor.
    Vec c_aff = lambda.cwiseProduct(s);
    Vec r1 = -rd + p.G.transpose() *
                       ((c_aff - lambda.cwiseProduct(rg)).cwiseQuotient(s));
    Vec dz_a, dy_a;
    kkt.solve(r1, me > 0 ? Vec(-rp) : Vec(), dz_a, dy_a);
    Vec ds_a = -rg - p.G * dz_a;
    Vec dl_a = (-c_aff - lambda.cwiseProduct(ds_a)).cwiseQuotient(s);
    double alpha_a = std::min(max_step(s, ds_a), max_step(lambda, dl_a));
    double mu_aff = (s + alpha_a * ds_a).dot(lambda + alpha_a * dl_a) / double(mi);
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);

    // Corrector.
    Vec c_cor = c_aff + dl_a.cwiseProduct(ds_a) -
                Vec::Constant(mi, sigma * mu);
    r1 = -rd + p.G.transpose() *
                   ((c_cor - lambda.cwiseProduct(rg)).cwiseQuotient(s));
    Vec dz, dy;
    kkt.solve(r1, me > 0 ? Vec(-rp) : Vec(), dz, dy);
    Vec ds = -rg - p.G * dz;
    Vec dl = (-c_cor - lambda.cwiseProduct(ds)).cwiseQuotient(s);

    double alpha = 0.99 * std::min(max_step(s, ds), max_step(lambda, dl));
    alpha = std::min(alpha, 1.0);
    z += alpha * dz;
    if (me > 0) y += alpha * dy;
    s += alpha * ds;
    lambda += alpha * dl;
    for (int i = 0; i < mi; ++i) {
      s(i) = std::max(s(i), 1e-300);
      lambda(i) = std::max(lambda(i), 0.0);
    }
  }

  res.z = z;
  res.y = y;
  res.lambda = lambda;
  res.objective = 0.5 * z.dot(p.q_diag.cwiseProduct(z)) + p.g.dot(z);
  if (!res.ok && res.message.empty())
    res.message = "interior point did not converge";
  if (res.ok) {
    // refresh the reported residual
    Vec rd = p.q_diag.cwiseProduct(z) + p.g + p.G.transpose() * lambda;
    if (me > 0) rd += p.A.transpose() * y;
    double r = rd.cwiseAbs().maxCoeff();
    if (me > 0) r = std::max(r, (p.A * z - p.b).cwiseAbs().maxCoeff());
    Vec viol = p.G * z - p.h;
    r = std::max(r, viol.maxCoeff());
    res.kkt_residual = std::max(r, 0.0);
  }
  return res;
}

}  // namespace mgrid
