#include "operadiff/permutation.hpp"

#include <numeric>
#include <sstream>

namespace operadiff {

Permutation::Permutation(std::vector<std::size_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto i : img_) {
    if (i >= img_.size() || seen[i]) throw InputError("not a permutation");
    seen[i] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
  auto p = identity(n);
  std::swap(p.img_.at(a), p.img_.at(b));
  return p;
}

Permutation Permutation::cycle(std::size_t n, const std::vector<std::size_t>& one_based) {
  auto p = identity(n);
  for (std::size_t k = 0; k < one_based.size(); ++k) {
    std::size_t from = one_based[k] - 1;
    std::size_t to = one_based[(k + 1) % one_based.size()] - 1;
    if (from >= n || to >= n) throw InputError("cycle entry out of range");
    p.img_[from] = to;
  }
  return Permutation(p.img_);
}

std::vector<Permutation> Permutation::all(std::size_t n) {
  std::vector<Permutation> out;
  auto img = identity(n).img_;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

int Permutation::sign() const {
  int s = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < img_.size(); ++i) os << (i ? " " : "") << img_[i] + 1;
  os << "]";
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw InputError("composing permutations of different sizes");
  std::vector<std::size_t> img(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) img[i] = p(q(i));
  return Permutation(std::move(img));
}

Permutation block_permutation(const Permutation& p, const std::vector<std::size_t>& sizes) {
  if (p.size() != sizes.size()) throw InputError("block sizes do not match permutation");
  auto inv = p.inverse();
  std::vector<std::size_t> target_offset(p.size() + 1, 0);
  for (std::size_t t = 0; t < p.size(); ++t) target_offset[t + 1] = target_offset[t] + sizes[inv(t)];
  std::vector<std::size_t> img;
  img.reserve(target_offset.back());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t r = 0; r < sizes[i]; ++r) img.push_back(target_offset[p(i)] + r);
  return Permutation(std::move(img));
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::size_t arrangement_rank(const std::vector<int>& seq) {
  std::size_t n = seq.size(), r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (seq[j] < seq[i]) ++smaller;
    r += smaller * factorial(n - 1 - i);
  }
  return r;
}

std::vector<int> arrangement_unrank(std::size_t n, std::size_t r) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t f = factorial(n - 1 - i);
    std::size_t k = r / f;
    r %= f;
    out.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

}  // namespace operadiff
