#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "prismalab/zmod.hpp"

namespace prismalab {

using IMat = Eigen::Matrix<i64, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IVec = Eigen::Matrix<i64, 1, Eigen::Dynamic>;

struct HowellResult {
  IMat H;                    // nonzero rows only
  IMat T;                    // T * A = H (only when requested)
  std::vector<int> pivcol;   // pivot column of each row of H
  std::vector<int> pivval;   // pivot entry is p^pivval
};

// Row Howell normal form over Z/p^k.
HowellResult howell_form(const IMat& A, const Zpk& z, bool with_transform = false);

// Row span of a matrix with membership and coordinates.
class RowSpan {
 public:
  RowSpan() = default;
  RowSpan(const IMat& A, const Zpk& z, bool with_transform = false);

  const Zpk& ring() const { return z_; }
  int cols() const { return cols_; }
  const HowellResult& howell() const { return h_; }
  bool contains(const IVec& v) const;
  // reduce v against the pivots; residue is zero iff v lies in the span
  IVec reduce(const IVec& v, IVec* coeffs = nullptr) const;
  // x with x * A = v, or nullopt (requires the transform)
  std::optional<IVec> solve(const IVec& v) const;
  // length of the span as a Z/p^k-module (log_p of its cardinality)
  i64 length() const;
  bool operator==(const RowSpan& o) const;
  bool contains_span(const RowSpan& o) const;

 private:
  Zpk z_;
  int cols_ = 0;
  HowellResult h_;
};

// Generators of the left kernel {x : x A = 0}.
IMat left_kernel(const IMat& A, const Zpk& z);

struct KernelSolution {
  IMat kernel;                      // columns generate {x : A x = 0}
  std::optional<Eigen::Matrix<i64, Eigen::Dynamic, 1>> particular;
};

// Column convention: generators of {x : A x = 0} and, if b is given, one x with A x = b.
// Throws Inconsistent when b is given and no solution exists.
KernelSolution kernel_solve(const IMat& A, const Zpk& z,
                            const std::optional<Eigen::Matrix<i64, Eigen::Dynamic, 1>>& b = std::nullopt);

// Valuations of the elementary divisors (entries equal to k are omitted).
std::vector<int> elementary_divisors(const IMat& A, const Zpk& z);

// Length of the cokernel (Z/p^k)^cols / rowspan(A).
i64 cokernel_length(const IMat& A, const Zpk& z);

IMat mat_mul(const IMat& A, const IMat& B, const Zpk& z);
IMat vstack(const IMat& A, const IMat& B);
IMat reduce_mod(const IMat& A, const Zpk& z);

}  // namespace prismalab
