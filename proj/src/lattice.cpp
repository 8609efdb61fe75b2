#include "e8jacobi/lattice.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <unordered_set>

#include "e8jacobi/errors.hpp"

namespace e8jac {

const std::array<std::array<int, kRank>, kRank> kCartan = {{
    {2, 0, -1, 0, 0, 0, 0, 0},
    {0, 2, 0, -1, 0, 0, 0, 0},
    {-1, 0, 2, -1, 0, 0, 0, 0},
    {0, -1, -1, 2, -1, 0, 0, 0},
    {0, 0, 0, -1, 2, -1, 0, 0},
    {0, 0, 0, 0, -1, 2, -1, 0},
    {0, 0, 0, 0, 0, -1, 2, -1},
    {0, 0, 0, 0, 0, 0, -1, 2},
}};

const std::array<std::array<int, kRank>, kRank> kWeightGram = {{
    {4, 5, 7, 10, 8, 6, 4, 2},
    {5, 8, 10, 15, 12, 9, 6, 3},
    {7, 10, 14, 20, 16, 12, 8, 4},
    {10, 15, 20, 30, 24, 18, 12, 6},
    {8, 12, 16, 24, 20, 15, 10, 5},
    {6, 9, 12, 18, 15, 12, 8, 4},
    {4, 6, 8, 12, 10, 8, 6, 3},
    {2, 3, 4, 6, 5, 4, 3, 2},
}};

const std::array<int, kRank> kTGrade = {2, 3, 4, 6, 5, 4, 3, 2};

namespace {

// Dynkin neighbours, 0-based.
const std::array<std::vector<int>, kRank> kNeighbours = [] {
  std::array<std::vector<int>, kRank> nb;
  for (int i = 0; i < kRank; ++i)
    for (int j = 0; j < kRank; ++j)
      if (i != j && kCartan[i][j] != 0) nb[i].push_back(j);
  return nb;
}();

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Weyl group order of a connected simply-laced diagram given by node set.
std::int64_t component_order(const std::vector<int>& nodes) {
  const int n = static_cast<int>(nodes.size());
  std::vector<bool> in(kRank, false);
  for (int v : nodes) in[v] = true;
  int branch = -1;
  for (int v : nodes) {
    int deg = 0;
    for (int w : kNeighbours[v]) deg += in[w] ? 1 : 0;
    if (deg == 3) branch = v;
  }
  if (branch < 0) return factorial(n + 1);
  std::vector<int> arms;
  for (int w : kNeighbours[branch]) {
    int len = 0, prev = branch, cur = w;
    while (cur >= 0 && in[cur]) {
      ++len;
      int next = -1;
      for (int x : kNeighbours[cur])
        if (x != prev && in[x]) next = x;
      prev = cur;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] != 1) throw ConsistencyError("unexpected Dynkin subdiagram");
  if (arms[1] == 1) return (std::int64_t{1} << (n - 1)) * factorial(n);  // D_n
  switch (arms[2]) {
    case 2: return 51840;
    case 3: return 2903040;
    case 4: return kWeylOrder;
  }
  throw ConsistencyError("unexpected Dynkin subdiagram");
}

struct LabelsHash {
  std::size_t operator()(const Labels& l) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : l) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

LatticeVector LatticeVector::simple_root(int node) {
  LatticeVector v;
  v.root[node - 1] = 1;
  return v;
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  LatticeVector r;
  for (int i = 0; i < kRank; ++i) r.root[i] = root[i] + o.root[i];
  return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
  LatticeVector r;
  for (int i = 0; i < kRank; ++i) r.root[i] = root[i] - o.root[i];
  return r;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r;
  for (int i = 0; i < kRank; ++i) r.root[i] = -root[i];
  return r;
}

LatticeVector LatticeVector::operator*(std::int64_t s) const {
  LatticeVector r;
  for (int i = 0; i < kRank; ++i) r.root[i] = root[i] * s;
  return r;
}

DominantWeight DominantWeight::fundamental(int node) {
  DominantWeight w;
  w.m[node - 1] = 1;
  return w;
}

DominantWeight DominantWeight::from_labels(const Labels& labels) {
  for (auto x : labels)
    if (x < 0) throw std::invalid_argument("weight is not dominant");
  DominantWeight w;
  w.m = labels;
  return w;
}

bool DominantWeight::is_zero() const {
  return std::all_of(m.begin(), m.end(), [](auto x) { return x == 0; });
}

DominantWeight DominantWeight::operator+(const DominantWeight& o) const {
  DominantWeight r;
  for (int i = 0; i < kRank; ++i) r.m[i] = m[i] + o.m[i];
  return r;
}

DominantWeight DominantWeight::operator*(std::int32_t s) const {
  DominantWeight r;
  for (int i = 0; i < kRank; ++i) r.m[i] = m[i] * s;
  return r;
}

std::int64_t inner_product(const LatticeVector& u, const LatticeVector& v) {
  std::int64_t s = 0;
  for (int i = 0; i < kRank; ++i)
    for (int j = 0; j < kRank; ++j)
      if (kCartan[i][j] != 0) s += u.root[i] * kCartan[i][j] * v.root[j];
  return s;
}

std::int64_t inner_product(const Labels& u, const Labels& v) {
  std::int64_t s = 0;
  for (int i = 0; i < kRank; ++i)
    for (int j = 0; j < kRank; ++j)
      s += std::int64_t{u[i]} * kWeightGram[i][j] * v[j];
  return s;
}

std::int64_t inner_product(const DominantWeight& u, const DominantWeight& v) {
  return inner_product(u.m, v.m);
}

std::int64_t norm(const Labels& labels) { return inner_product(labels, labels) / 2; }
std::int64_t norm(const DominantWeight& m) { return norm(m.m); }

std::int64_t t_grade(const DominantWeight& m) {
  std::int64_t s = 0;
  for (int i = 0; i < kRank; ++i) s += std::int64_t{kTGrade[i]} * m.m[i];
  return s;
}

std::int64_t height(const DominantWeight& m) {
  std::int64_t s = 0;
  for (auto x : vector_of(m).root) s += x;
  return s;
}

Labels labels_of(const LatticeVector& v) {
  Labels l{};
  for (int i = 0; i < kRank; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < kRank; ++j) s += std::int64_t{kCartan[i][j]} * v.root[j];
    l[i] = static_cast<std::int32_t>(s);
  }
  return l;
}

Labels labels_of(const DominantWeight& m) { return m.m; }

LatticeVector vector_of(const Labels& labels) {
  LatticeVector v;
  for (int i = 0; i < kRank; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < kRank; ++j) s += std::int64_t{kWeightGram[i][j]} * labels[j];
    v.root[i] = s;
  }
  return v;
}

LatticeVector vector_of(const DominantWeight& m) { return vector_of(m.m); }

void reflect(Labels& labels, int node) {
  const int i = node - 1;
  const std::int32_t c = labels[i];
  if (c == 0) return;
  for (int j = 0; j < kRank; ++j) labels[j] -= c * kCartan[i][j];
}

DominantWeight to_dominant(const Labels& labels) {
  Labels l = labels;
  for (;;) {
    int i = 0;
    while (i < kRank && l[i] >= 0) ++i;
    if (i == kRank) break;
    reflect(l, i + 1);
  }
  DominantWeight w;
  w.m = l;
  return w;
}

DominantWeight to_dominant(const LatticeVector& v) { return to_dominant(labels_of(v)); }

std::int64_t stabilizer_order(const DominantWeight& m) {
  std::array<bool, kRank> seen{};
  std::int64_t order = 1;
  for (int s = 0; s < kRank; ++s) {
    if (seen[s] || m.m[s] != 0) continue;
    std::vector<int> comp{s};
    seen[s] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (int w : kNeighbours[comp[k]])
        if (!seen[w] && m.m[w] == 0) {
          seen[w] = true;
          comp.push_back(w);
        }
    order *= component_order(comp);
  }
  return order;
}

std::int64_t orbit_size(const DominantWeight& m) { return kWeylOrder / stabilizer_order(m); }

std::vector<Labels> orbit_labels(const DominantWeight& m, std::size_t budget) {
  std::vector<Labels> out{m.m};
  std::vector<Labels> level{m.m};
  while (!level.empty()) {
    std::unordered_set<Labels, LabelsHash> next;
    for (const auto& l : level)
      for (int i = 0; i < kRank; ++i)
        if (l[i] > 0) {
          Labels r = l;
          reflect(r, i + 1);
          next.insert(r);
        }
    level.assign(next.begin(), next.end());
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
    if (out.size() > budget) throw ResourceError("orbit enumeration exceeds budget");
  }
  return out;
}

std::vector<LatticeVector> shell(std::int64_t n, std::size_t budget) {
  if (n < 0) throw std::invalid_argument("negative norm");
  using Q = boost::rational<std::int64_t>;
  // x^T C x = sum_i d_i (x_i + sum_{j>i} l_{ji} x_j)^2, eliminating from node 1.
  std::array<std::array<Q, kRank>, kRank> a{};
  for (int i = 0; i < kRank; ++i)
    for (int j = 0; j < kRank; ++j) a[i][j] = kCartan[i][j];
  std::array<Q, kRank> d{};
  std::array<std::array<Q, kRank>, kRank> l{};  // l[i][j] for j > i
  for (int i = 0; i < kRank; ++i) {
    d[i] = a[i][i];
    for (int j = i + 1; j < kRank; ++j) l[i][j] = a[i][j] / d[i];
    for (int j = i + 1; j < kRank; ++j)
      for (int k = i + 1; k < kRank; ++k) a[j][k] -= l[i][j] * a[i][k];
  }
  std::vector<LatticeVector> out;
  LatticeVector x;
  // Assign coordinates from the last index down; term i depends on x_i..x_7.
  auto rec = [&](auto&& self, int i, Q remaining) -> void {
    if (i < 0) {
      if (remaining == Q(0)) {
        out.push_back(x);
        if (out.size() > budget) throw ResourceError("shell enumeration exceeds budget");
      }
      return;
    }
    Q c(0);
    for (int j = i + 1; j < kRank; ++j) c += l[i][j] * x.root[j];
    const double cd = boost::rational_cast<double>(c);
    const double r = std::sqrt(boost::rational_cast<double>(remaining / d[i]));
    const auto lo = static_cast<std::int64_t>(std::floor(-cd - r)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(-cd + r)) + 1;
    for (std::int64_t v = lo; v <= hi; ++v) {
      const Q t = Q(v) + c;
      const Q term = d[i] * t * t;
      if (term > remaining) continue;
      x.root[i] = v;
      self(self, i - 1, remaining - term);
    }
    x.root[i] = 0;
  };
  rec(rec, kRank - 1, Q(2 * n));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Dominant label vectors with (m,m) <= 2*bound (or == when exact).
std::vector<DominantWeight> dominant_search(std::int64_t bound, bool exact) {
  std::vector<DominantWeight> out;
  if (bound < 0) return out;
  Labels m{};
  // partial = (m,m) restricted to assigned coordinates 0..i-1; all Gram entries
  // are positive, so increasing any label only increases the form.
  auto rec = [&](auto&& self, int i, std::int64_t partial) -> void {
    if (i == kRank) {
      if (!exact || partial == 2 * bound) out.push_back(DominantWeight::from_labels(m));
      return;
    }
    for (std::int32_t v = 0;; ++v) {
      m[i] = v;
      std::int64_t add = std::int64_t{kWeightGram[i][i]} * v * v;
      for (int j = 0; j < i; ++j) add += 2 * std::int64_t{kWeightGram[i][j]} * v * m[j];
      if (partial + add > 2 * bound) break;
      self(self, i + 1, partial + add);
    }
    m[i] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

std::vector<DominantWeight> dominant_by_norm(std::int64_t n) { return dominant_search(n, true); }
std::vector<DominantWeight> dominant_up_to_norm(std::int64_t n) { return dominant_search(n, false); }

std::vector<DominantWeight> dominant_by_T(std::int64_t t) {
  std::vector<DominantWeight> out;
  if (t < 0) return out;
  Labels m{};
  auto rec = [&](auto&& self, int i, std::int64_t used) -> void {
    if (i == kRank) {
      out.push_back(DominantWeight::from_labels(m));
      return;
    }
    for (std::int32_t v = 0; used + std::int64_t{kTGrade[i]} * v <= t; ++v) {
      m[i] = v;
      self(self, i + 1, used + std::int64_t{kTGrade[i]} * v);
    }
    m[i] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::int64_t max_pairing(const DominantWeight& m, const LatticeVector& v) {
  return inner_product(m, to_dominant(v));
}

std::string label_string(const DominantWeight& m) {
  const bool wide = std::any_of(m.m.begin(), m.m.end(), [](std::int32_t x) { return x > 9; });
  std::string s = "[";
  for (int i = 0; i < kRank; ++i) {
    if (wide && i > 0) s += ",";
    s += std::to_string(m.m[i]);
  }
  return s + "]";
}

bool canonical_less(const DominantWeight& a, const DominantWeight& b) {
  const auto na = norm(a), nb = norm(b);
  if (na != nb) return na < nb;
  return a.m < b.m;
}

void self_test_coordinates() {
  for (int i = 0; i < kRank; ++i)
    for (int j = 0; j < kRank; ++j) {
      int s = 0;
      for (int k = 0; k < kRank; ++k) s += kCartan[i][k] * kWeightGram[k][j];
      if (s != (i == j ? 1 : 0)) throw ConsistencyError("weight Gram is not the inverse Cartan matrix");
    }
  for (int i = 0; i < kRank; ++i)
    if (kWeightGram[7][i] != kTGrade[i]) throw ConsistencyError("T-grading does not match (w_i, w_8)");
  if (orbit_size(DominantWeight::fundamental(8)) != 240)
    throw ConsistencyError("w_8 is not the highest root");
}

WeightKey pack(const DominantWeight& m) {
  WeightKey k = 0;
  for (int i = 0; i < kRank; ++i) {
    if (m.m[i] < 0 || m.m[i] > 255) throw ResourceError("weight label out of packing range");
    k |= static_cast<WeightKey>(m.m[i]) << (8 * i);
  }
  return k;
}

DominantWeight unpack(WeightKey key) {
  DominantWeight m;
  for (int i = 0; i < kRank; ++i) m.m[i] = static_cast<std::int32_t>((key >> (8 * i)) & 0xff);
  return m;
}

}  // namespace e8jac
