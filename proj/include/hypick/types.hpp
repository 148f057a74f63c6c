#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hypick {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

// Numerical policy shared by every operation.  eq is a relative matrix/scalar
// equality tolerance, psd the slack allowed below zero in semidefiniteness
// tests, zero the hard threshold for "this quantity vanishes", rank the
// threshold for rank decisions in least-squares and Gram-Schmidt steps.
struct Tolerances {
  double eq = 1e-8;
  double psd = 1e-10;
  double zero = 1e-12;
  double rank = 1e-10;

  bool valid() const {
    auto ok = [](double t) { return t > 0.0 && t < 1e-2; };
    return ok(eq) && ok(psd) && ok(zero) && ok(rank);
  }
};

enum class ErrorKind {
  Validation,   // input fails a structural precondition
  NotCpp,       // space lacks the complete Pick property
  Infeasible,   // invariant data not realizable by any configuration
  Domain,       // argument outside the mathematical domain
  Numeric,      // internal inconsistency / conditioning failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  std::vector<std::string> issues;
  explicit ValidationError(std::vector<std::string> what)
      : Error(ErrorKind::Validation, join(what)), issues(std::move(what)) {}

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "validation failed:";
    for (const auto& e : v) s += " [" + e + "]";
    return s;
  }
};

// Evidence attached to a NotCpp failure: either a negative eigenvalue of some
// MQ block, or a negative height radicand at a step of the embedding
// induction (the Schur-complement margin), or both.
struct NotCppCertificate {
  int mq_index = -1;          // 0-based index r of a violating MQ block
  double mq_eigenvalue = 0.0; // its most negative eigenvalue
  int step = -1;              // 0-based point index where embedding failed
  double height_margin = 0.0; // radicand value at that step (negative)
  std::string detail;
};

struct NotCppError : Error {
  NotCppCertificate certificate;
  explicit NotCppError(NotCppCertificate cert)
      : Error(ErrorKind::NotCpp, "space is not a complete Pick space: " + cert.detail),
        certificate(std::move(cert)) {}
};

struct InfeasibleError : Error {
  explicit InfeasibleError(const std::string& message)
      : Error(ErrorKind::Infeasible, message) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& message)
      : Error(ErrorKind::Domain, message) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& message)
      : Error(ErrorKind::Numeric, message) {}
};

// Relative scalar equality: |a - b| <= tol * (1 + |b|).
inline bool scalar_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}

// Relative Frobenius-norm equality with the first argument as reference.
inline bool matrix_close(const Matrix& a, const Matrix& b, double tol) {
  return (a - b).norm() <= tol * (1.0 + a.norm());
}

inline double matrix_rel_residual(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / (1.0 + a.norm());
}

// Hermitian quadratic form sum_{i,j} c_i conj(c_j) k_ij; real for Hermitian k.
inline double gram_quadratic_form(const Matrix& k, const Vector& c) {
  Complex s = (c.transpose() * k * c.conjugate())(0, 0);
  return s.real();
}

// Reduce an angle to the principal branch (-pi, pi].
inline double principal_angle(double a) {
  double r = std::remainder(a, 2.0 * pi);  // (-pi, pi], up to sign of boundary
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

}  // namespace hypick
