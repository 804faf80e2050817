#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace hsn {

using cplx = std::complex<double>;

/// Multiindex with non-negative integer entries; dimension = size().
using MultiIndex = std::vector<int>;

/// Sum of the entries.
int order_of(const MultiIndex& a);

/// All multiindices of the given dimension and order in canonical order:
/// lexicographic on exponent vectors with the first coordinate descending,
/// e.g. dim=2, order=2 -> (2,0), (1,1), (0,2).
std::vector<MultiIndex> enumerate_multiindices(int dim, int order);

/// order! / (a_1! ... a_d!)
std::int64_t multinomial(const MultiIndex& a);

/// a! = a_1! ... a_d!
std::int64_t mi_factorial(const MultiIndex& a);

/// prod_i z_i^{a_i}
cplx mi_pow(const Eigen::VectorXcd& z, const MultiIndex& a);
cplx mi_pow(const Eigen::VectorXd& z, const MultiIndex& a);

/// The canonical enumeration of {|a| = order} in dimension dim, with lookup.
class MultiIndexSet {
 public:
  MultiIndexSet() = default;
  MultiIndexSet(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(list_.size()); }
  const MultiIndex& operator[](int i) const { return list_[i]; }
  const std::vector<MultiIndex>& list() const { return list_; }

  /// Position in canonical order; -1 if not a member.
  int index_of(const MultiIndex& a) const;

 private:
  int dim_ = 0;
  int order_ = 0;
  std::vector<MultiIndex> list_;
};

/// Inner product of arrays indexed by a MultiIndexSet; conjugates the first
/// argument: <F, G> = sum_a conj(F_a) G_a.
cplx array_inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

}  // namespace hsn
