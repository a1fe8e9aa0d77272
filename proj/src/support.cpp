#include "blockabs/support.hpp"

#include <cmath>
#include <sstream>

namespace blockabs {

namespace {

ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

// (shift I + 4 BB*)^{1/2} and its inverse.
struct Root {
  ComplexMatrix t;
  ComplexMatrix tinv;
};

Root shifted_outer_root(double shift, const ComplexMatrix& b, const Tolerance& tol) {
  const HermitianMatrix arg(shift * eye(b.rows()) + 4.0 * b * b.adjoint());
  const HermitianMatrix t = psd_sqrt(arg, tol);
  return {t.matrix(), pd_inverse(t, tol).matrix()};
}

}  // namespace

LambdaBlock::LambdaBlock(double lambda, ComplexMatrix b) : lambda_(lambda), b_(std::move(b)) {
  if (!std::isfinite(lambda_)) throw Error(ErrorCode::NonFinite, "lambda must be finite");
  require_finite(b_, "B");
}

HermitianMatrix LambdaBlock::assemble() const {
  return HermitianMatrix(block2x2(lambda_ * eye(dim_h()), b_, b_.adjoint(),
                                  ComplexMatrix::Zero(dim_k(), dim_k())));
}

HermitianMatrix support_root_block(const HermitianMatrix& a, const Tolerance& tol) {
  const ComplexMatrix root = psd_sqrt(a, tol).matrix();
  const ComplexMatrix inv =
      pd_inverse(HermitianMatrix(eye(a.dim()) + 4.0 * a.matrix()), tol).matrix();
  return HermitianMatrix(
      block2x2(inv, 2.0 * root * inv, 2.0 * root * inv, 4.0 * a.matrix() * inv));
}

HermitianMatrix support_commuting_pair(const HermitianMatrix& a, const HermitianMatrix& c,
                                       const Tolerance& tol) {
  if (a.dim() != c.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "commuting pair of different dimensions");
  }
  if (!is_psd(a, tol)) throw Error(ErrorCode::NotPositive, "A must be psd");
  if (c.dim() > 0 && !(min_eigenvalue(c) > tol.rank)) {
    throw Error(ErrorCode::PreconditionViolation, "C must be positive definite");
  }
  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix& cm = c.matrix();
  const double commutator = (am * cm - cm * am).norm();
  if (commutator > tol.compare * (1.0 + am.norm() * cm.norm())) {
    std::ostringstream os;
    os << "||AC - CA||_F = " << commutator;
    throw Error(ErrorCode::PreconditionViolation, os.str());
  }
  const ComplexMatrix c2 = cm * cm;
  const ComplexMatrix inv = pd_inverse(HermitianMatrix(c2 + 4.0 * am), tol).matrix();
  const ComplexMatrix off = 2.0 * psd_sqrt(a, tol).matrix() * cm * inv;
  return HermitianMatrix(block2x2(c2 * inv, off, off, 4.0 * am * inv));
}

HermitianMatrix transport_support(const HermitianMatrix& g, const PartialIsometry& u,
                                  const Tolerance& tol) {
  const ComplexMatrix& um = u.matrix();
  if (um.cols() != g.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "partial isometry does not act on G's space");
  }
  const ComplexMatrix& gm = g.matrix();
  if (!approx_equal(um.adjoint() * um * gm, gm, tol.compare)) {
    throw Error(ErrorCode::PreconditionViolation, "U*U G != G");
  }
  const HermitianMatrix pg = support_projection_oracle(g, tol);
  return HermitianMatrix(um * pg.matrix() * um.adjoint());
}

HermitianMatrix positive_part(const LambdaBlock& s, const Tolerance& tol) {
  const double lambda = s.lambda();
  const ComplexMatrix& b = s.b();
  const Index dh = s.dim_h();
  if (lambda == 0.0) {
    const AbsoluteFactors f = abs_factors(b);
    return HermitianMatrix(0.5 * block2x2(f.left.matrix(), b, b.adjoint(), f.right.matrix()));
  }
  const Root r = shifted_outer_root(lambda * lambda, b, tol);
  const ComplexMatrix tl = 0.5 * (r.t + lambda * lambda * r.tinv + 2.0 * lambda * eye(dh));
  const ComplexMatrix tr = b + lambda * r.tinv * b;
  const ComplexMatrix br = 2.0 * b.adjoint() * r.tinv * b;
  return HermitianMatrix(0.5 * block2x2(tl, tr, tr.adjoint(), br));
}

HermitianMatrix negative_part(const LambdaBlock& s, const Tolerance& tol) {
  return positive_part(s, tol) - s.assemble();
}

HermitianMatrix negative_part_unit(const ComplexMatrix& b, const Tolerance& tol) {
  require_finite(b, "B");
  const Index dh = b.rows();
  const Root r = shifted_outer_root(1.0, b, tol);
  const ComplexMatrix tl = 0.25 * (r.t + r.tinv - 2.0 * eye(dh));
  const ComplexMatrix tr = 0.5 * (r.tinv - eye(dh)) * b;
  return HermitianMatrix(block2x2(tl, tr, tr.adjoint(), b.adjoint() * r.tinv * b));
}

HermitianMatrix support(const LambdaBlock& s, const Tolerance& tol) {
  const PartialIsometry v = polar_partial_isometry(s.b(), tol);
  const ComplexMatrix top =
      s.lambda() == 0.0 ? v.initial_projection().matrix() : eye(s.dim_h());
  return HermitianMatrix(direct_sum(top, v.final_projection().matrix()));
}

HermitianMatrix support_unit(const ComplexMatrix& b, const Tolerance& tol) {
  return support(LambdaBlock(1.0, b), tol);
}

HermitianMatrix support_positive_part(const LambdaBlock& s, const Tolerance& tol) {
  const double lambda = s.lambda();
  const ComplexMatrix& b = s.b();
  const Index dh = s.dim_h();
  const PartialIsometry v = polar_partial_isometry(b, tol);
  const ComplexMatrix& vm = v.matrix();

  if (lambda == 0.0) {
    return HermitianMatrix(0.5 * block2x2(v.initial_projection().matrix(), vm.adjoint(), vm,
                                          v.final_projection().matrix()));
  }

  const Root r = shifted_outer_root(lambda * lambda, b, tol);
  const ComplexMatrix tl = 0.5 * (eye(dh) + lambda * r.tinv);
  const ComplexMatrix tr = r.tinv * b;
  ComplexMatrix br;
  if (lambda > 0) {
    // lambda I + T >= 2 lambda I.
    const ComplexMatrix shifted_inv =
        pd_inverse(HermitianMatrix(lambda * eye(dh) + r.t), tol).matrix();
    br = 2.0 * b.adjoint() * r.tinv * shifted_inv * b;
  } else {
    br = 0.5 * vm * (eye(dh) - lambda * r.tinv) * vm.adjoint();
  }
  return HermitianMatrix(block2x2(tl, tr, tr.adjoint(), br));
}

HermitianMatrix support_negative_part(const LambdaBlock& s, const Tolerance& tol) {
  return support(s, tol) - support_positive_part(s, tol);
}

HermitianMatrix support_negative_part_unit(const ComplexMatrix& b, const Tolerance& tol) {
  require_finite(b, "B");
  const Index dh = b.rows();
  const ComplexMatrix vm = polar_partial_isometry(b, tol).matrix();
  const Root r = shifted_outer_root(1.0, b, tol);
  const ComplexMatrix tl = 0.5 * (eye(dh) - r.tinv);
  const ComplexMatrix tr = -r.tinv * b;
  const ComplexMatrix br = 0.5 * vm * (r.tinv + eye(dh)) * vm.adjoint();
  return HermitianMatrix(block2x2(tl, tr, tr.adjoint(), br));
}

HermitianMatrix idempotent_sum_positive_part(const ComplexMatrix& e1, const Tolerance& tol) {
  require_finite(e1, "E1");
  const Index r = e1.rows();
  const Root root = shifted_outer_root(1.0, 0.5 * e1, tol);  // (I + E1 E1*)^{1/2}
  const ComplexMatrix tl = root.t + root.tinv + 2.0 * eye(r);
  const ComplexMatrix tr = (eye(r) + root.tinv) * e1;
  return HermitianMatrix(0.5 * block2x2(tl, tr, tr.adjoint(), e1.adjoint() * root.tinv * e1));
}

HermitianMatrix idempotent_sum_support(const ComplexMatrix& e1, const Tolerance& tol) {
  require_finite(e1, "E1");
  const Index r = e1.rows();
  const Root root = shifted_outer_root(1.0, 0.5 * e1, tol);
  const ComplexMatrix tl = eye(r) + root.tinv;
  const ComplexMatrix tr = root.tinv * e1;
  const ComplexMatrix inv_t_t2 =
      pd_inverse(HermitianMatrix(root.t + root.t * root.t), tol).matrix();
  return HermitianMatrix(0.5 * block2x2(tl, tr, tr.adjoint(), e1.adjoint() * inv_t_t2 * e1));
}

}  // namespace blockabs
