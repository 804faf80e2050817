#include "hsn/multiindex.hpp"

#include <stdexcept>

namespace hsn {

int order_of(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

std::vector<MultiIndex> enumerate_multiindices(int dim, int order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("enumerate_multiindices: bad arguments");
  if (dim == 1) return {MultiIndex{order}};
  std::vector<MultiIndex> out;
  for (int k = order; k >= 0; --k) {
    for (auto& rest : enumerate_multiindices(dim - 1, order - k)) {
      MultiIndex a;
      a.reserve(dim);
      a.push_back(k);
      a.insert(a.end(), rest.begin(), rest.end());
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::int64_t mi_factorial(const MultiIndex& a) {
  std::int64_t f = 1;
  for (int v : a)
    for (int i = 2; i <= v; ++i) f *= i;
  return f;
}

std::int64_t multinomial(const MultiIndex& a) {
  // order!/a! computed as a product of binomials to stay in range
  std::int64_t result = 1;
  int seen = 0;
  for (int v : a) {
    for (int i = 1; i <= v; ++i) {
      result = result * (seen + i) / i;  // exact: C(seen+i, i) builds incrementally
    }
    seen += v;
  }
  return result;
}

cplx mi_pow(const Eigen::VectorXcd& z, const MultiIndex& a) {
  cplx r = 1.0;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int k = 0; k < a[i]; ++k) r *= z[i];
  return r;
}

cplx mi_pow(const Eigen::VectorXd& z, const MultiIndex& a) {
  cplx r = 1.0;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    for (int k = 0; k < a[i]; ++k) r *= z[i];
  return r;
}

MultiIndexSet::MultiIndexSet(int dim, int order)
    : dim_(dim), order_(order), list_(enumerate_multiindices(dim, order)) {}

int MultiIndexSet::index_of(const MultiIndex& a) const {
  for (int i = 0; i < size(); ++i)
    if (list_[i] == a) return i;
  return -1;
}

cplx array_inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  return f.dot(g);  // Eigen dot conjugates the first operand
}

}  // namespace hsn
