#include "e8jacobi/orbit_ring.hpp"

#include <algorithm>

#include "e8jacobi/errors.hpp"
#include "e8jacobi/kernels.hpp"

namespace e8jac {

namespace {

constexpr int kFundamentalByOrbitSize[kRank] = {8, 1, 7, 2, 6, 3, 5, 4};

int zero_pattern(WeightKey m) {
  int z = 0;
  for (int i = 0; i < kRank; ++i)
    if (((m >> (8 * i)) & 0xff) == 0) z |= 1 << i;
  return z;
}

WeightKey fundamental_key(int node) { return WeightKey{1} << (8 * (node - 1)); }

void sort_terms(IntTerms& t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

std::int64_t key_height(WeightKey m) { return height(unpack(m)); }

OrbitRing& OrbitRing::instance() {
  static OrbitRing ring;
  return ring;
}

OrbitRing::OrbitRing() {
  for (int z = 0; z < 256; ++z) {
    DominantWeight w;
    for (int i = 0; i < kRank; ++i) w.m[i] = (z >> i) & 1 ? 0 : 1;
    stab_by_zero_pattern_[z] = stabilizer_order(w);
  }
}

std::int64_t OrbitRing::stabilizer(WeightKey m) const { return stab_by_zero_pattern_[zero_pattern(m)]; }

void OrbitRing::set_max_norm(std::int64_t n) {
  std::lock_guard lock(mu_);
  max_norm_ = n;
}

std::size_t OrbitRing::table_size() {
  std::lock_guard lock(mu_);
  return monomials_.size();
}

const std::vector<std::int8_t>& OrbitRing::orbit(WeightKey m) {
  std::lock_guard lock(mu_);
  auto it = orbits_.find(m);
  if (it != orbits_.end()) return it->second;
  const auto labels = orbit_labels(unpack(m));
  std::vector<std::int8_t> rows;
  rows.reserve(labels.size() * kRank);
  for (const auto& l : labels)
    for (auto x : l) {
      if (x < -128 || x > 127) throw ResourceError("orbit labels exceed int8 storage");
      rows.push_back(static_cast<std::int8_t>(x));
    }
  return orbits_.emplace(m, std::move(rows)).first->second;
}

const std::vector<std::pair<WeightKey, std::int64_t>>& OrbitRing::product(WeightKey p, WeightKey q) {
  if (orbit_size(unpack(p)) < orbit_size(unpack(q)) ||
      (orbit_size(unpack(p)) == orbit_size(unpack(q)) && p < q))
    std::swap(p, q);
  std::lock_guard lock(mu_);
  auto it = products_.find({p, q});
  if (it != products_.end()) return it->second;
  // orb(p) orb(q) = sum_{y in Wq} |W_{p+y}|/|W_p| orb(fold(p+y)), expanding the smaller orbit.
  const auto& ys = orbit(q);
  const std::size_t count = ys.size() / kRank;
  const Labels base = unpack(p).m;
  std::vector<WeightKey> keys(count);
  fold_sum_keys(base.data(), ys.data(), count, keys.data());
  std::unordered_map<WeightKey, std::int64_t> acc;
  for (auto k : keys) acc[k] += stabilizer(k);
  const std::int64_t sp = stabilizer(p);
  std::vector<std::pair<WeightKey, std::int64_t>> out;
  out.reserve(acc.size());
  for (const auto& [k, s] : acc) {
    if (s % sp != 0) throw ConsistencyError("orbit product multiplicity is not integral");
    out.emplace_back(k, s / sp);
  }
  std::sort(out.begin(), out.end());
  return products_.emplace(std::make_pair(p, q), std::move(out)).first->second;
}

const IntTerms& OrbitRing::monomial(WeightKey m) {
  std::lock_guard lock(mu_);
  auto it = monomials_.find(m);
  if (it != monomials_.end()) return it->second;
  const DominantWeight w = unpack(m);
  IntTerms out;
  int node = 0;
  for (int cand : kFundamentalByOrbitSize)
    if (w.m[cand - 1] > 0) {
      node = cand;
      break;
    }
  if (node == 0) {
    out.emplace_back(0, 1);
  } else if (norm(w) > max_norm_) {
    throw ResourceError("orbit table would exceed the configured maximal norm " +
                        std::to_string(max_norm_));
  } else {
    const WeightKey fk = fundamental_key(node);
    const IntTerms lower = monomial(m - fk);  // copy: the table may rehash
    std::unordered_map<WeightKey, Integer> acc;
    for (const auto& [l, c] : lower)
      for (const auto& [k, cnt] : product(l, fk)) {
        Integer& slot = acc[k];
        mpz_addmul_ui(slot.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(cnt));
      }
    for (auto& [k, c] : acc)
      if (c != 0) out.emplace_back(k, std::move(c));
    sort_terms(out);
  }
  return monomials_.emplace(m, std::move(out)).first->second;
}

IntTerms OrbitRing::to_x(const IntTerms& orbit_coeffs) {
  // Peel off the highest orbit; X^m has leading term orb(m).
  std::map<std::pair<std::int64_t, WeightKey>, Integer> work;
  for (const auto& [k, c] : orbit_coeffs)
    if (c != 0) work[{key_height(k), k}] += c;
  IntTerms out;
  while (!work.empty()) {
    auto top = std::prev(work.end());
    const WeightKey m = top->first.second;
    const Integer c = top->second;
    work.erase(top);
    if (c == 0) continue;
    out.emplace_back(m, c);
    for (const auto& [k, e] : monomial(m)) {
      if (k == m) continue;
      Integer& slot = work[{key_height(k), k}];
      mpz_submul(slot.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t());
    }
  }
  sort_terms(out);
  return out;
}

IntTerms OrbitRing::to_orbit(const IntTerms& x_coeffs) {
  std::unordered_map<WeightKey, Integer> acc;
  for (const auto& [m, c] : x_coeffs) {
    if (c == 0) continue;
    for (const auto& [k, e] : monomial(m)) {
      Integer& slot = acc[k];
      mpz_addmul(slot.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t());
    }
  }
  IntTerms out;
  for (auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, std::move(c));
  sort_terms(out);
  return out;
}

}  // namespace e8jac
