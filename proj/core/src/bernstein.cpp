#include "certicurve/bernstein.hpp"

#include <algorithm>
#include <stdexcept>

namespace certicurve {

const char* to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::PositiveOnBox:
      return "PositiveOnBox";
    case SignVerdict::NegativeOnBox:
      return "NegativeOnBox";
    case SignVerdict::Indeterminate:
      return "Indeterminate";
  }
  return "?";
}

namespace {

struct Tensor {
  std::vector<int> ext;
  std::vector<Integer> c;

  std::size_t stride(std::size_t d) const {
    std::size_t s = 1;
    for (std::size_t i = d + 1; i < ext.size(); ++i) s *= static_cast<std::size_t>(ext[i]);
    return s;
  }

  // f(line) for each line along dimension d; line holds pointers in order
  template <class F>
  void for_each_line(std::size_t d, F&& f) {
    const std::size_t s = stride(d);
    const std::size_t n = static_cast<std::size_t>(ext[d]);
    const std::size_t block = s * n;
    std::vector<Integer*> line(n);
    for (std::size_t base = 0; base < c.size(); base += block)
      for (std::size_t off = 0; off < s; ++off) {
        for (std::size_t k = 0; k < n; ++k) line[k] = &c[base + off + k * s];
        f(line);
      }
  }
};

Tensor to_tensor(const MPoly& p) {
  Tensor t;
  t.ext = p.extents();
  const auto& d = p.dense();
  Integer l = 1;
  for (const auto& x : d)
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  t.c.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) t.c[i] = d[i].get_num() * (l / d[i].get_den());
  return t;
}

void strip_content(Tensor& t) {
  Integer g = 0;
  for (const auto& x : t.c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : t.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Along dimension d substitute x = (A + B u) / C and multiply by C^n.
void affine_dim(Tensor& t, std::size_t d, const Integer& A, const Integer& B, const Integer& C) {
  const std::size_t n = static_cast<std::size_t>(t.ext[d]);
  if (n <= 1) return;
  std::vector<Integer> cp(n);
  cp[0] = 1;
  for (std::size_t i = 1; i < n; ++i) cp[i] = cp[i - 1] * C;
  std::vector<Integer> s, nx;
  s.reserve(n);
  nx.reserve(n);
  t.for_each_line(d, [&](std::vector<Integer*>& line) {
    s.assign(1, *line[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
      nx.assign(s.size() + 1, Integer(0));
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] == 0) continue;
        if (A != 0) nx[j] += A * s[j];
        nx[j + 1] += B * s[j];
      }
      nx[0] += *line[i] * cp[n - 1 - i];
      s.swap(nx);
    }
    for (std::size_t k = 0; k < n; ++k) *line[k] = s[k];
  });
}

// Unit-interval shortcut: u = (bit + v) / 2 along every dimension.
void halve_dim(Tensor& t, std::size_t d, int bit) {
  const std::size_t n = static_cast<std::size_t>(t.ext[d]);
  if (n <= 1) return;
  const std::size_t deg = n - 1;
  t.for_each_line(d, [&](std::vector<Integer*>& line) {
    // p(v/2) * 2^deg
    for (std::size_t i = 0; i < n; ++i) mpz_mul_2exp(line[i]->get_mpz_t(), line[i]->get_mpz_t(), deg - i);
    if (bit) {
      // Taylor shift by 1
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) *line[j - 1] += *line[j];
    }
  });
}

const std::vector<std::vector<Integer>>& binomials(std::size_t n) {
  static thread_local std::vector<std::vector<Integer>> table;
  while (table.size() <= n) {
    std::size_t m = table.size();
    std::vector<Integer> row(m + 1);
    row[0] = row[m] = 1;
    for (std::size_t k = 1; k < m; ++k) row[k] = table[m - 1][k - 1] + table[m - 1][k];
    table.push_back(std::move(row));
  }
  return table;
}

// Scaled Bernstein coefficients along every dimension: b_j * C(n, j).
Tensor scaled_bernstein(Tensor t) {
  for (std::size_t d = 0; d < t.ext.size(); ++d) {
    const std::size_t n = static_cast<std::size_t>(t.ext[d]);
    if (n <= 1) continue;
    const std::size_t deg = n - 1;
    const auto& bin = binomials(deg);
    std::vector<Integer> out(n);
    t.for_each_line(d, [&](std::vector<Integer*>& line) {
      for (std::size_t j = 0; j < n; ++j) {
        Integer acc = 0;
        for (std::size_t i = 0; i <= j; ++i)
          if (*line[i] != 0) acc += bin[deg - i][j - i] * *line[i];
        out[j] = std::move(acc);
      }
      for (std::size_t j = 0; j < n; ++j) *line[j] = out[j];
    });
  }
  return t;
}

// Flat index of the corner coefficient.
std::size_t corner_index(const Tensor& t, const std::vector<bool>& upper) {
  std::size_t idx = 0;
  for (std::size_t d = 0; d < t.ext.size(); ++d)
    idx = idx * static_cast<std::size_t>(t.ext[d]) + (upper[d] ? static_cast<std::size_t>(t.ext[d] - 1) : 0);
  return idx;
}

// +1 / -1 when all coefficients are strictly of that sign, skipping allowed zero slots; 0 otherwise.
int uniform_sign(const Tensor& b, const std::vector<std::size_t>& allowed) {
  int s = 0;
  for (std::size_t i = 0; i < b.c.size(); ++i) {
    int v = sgn(b.c[i]);
    if (v == 0) {
      if (std::find(allowed.begin(), allowed.end(), i) != allowed.end()) continue;
      return 0;
    }
    if (s == 0)
      s = v;
    else if (s != v)
      return 0;
  }
  return s;
}

}  // namespace

std::vector<Rational> bernstein_coefficients(const MPoly& p, const Box& box, std::vector<int>* degrees) {
  if (box.ranges.size() != p.nvars()) throw std::invalid_argument("box dimension mismatch");
  MPoly q = p;
  for (std::size_t d = 0; d < p.nvars(); ++d)
    q = q.affine_substitute(d, box.ranges[d].first, box.ranges[d].second - box.ranges[d].first);
  // re-expand on the original extents so every dimension keeps its degree
  std::vector<int> ext = p.extents();
  std::size_t total = 1;
  for (int e : ext) total *= static_cast<std::size_t>(std::max(e, 1));
  std::vector<Rational> a(total);
  if (!q.is_zero()) {
    q.for_each_term([&](std::span<const int> e, const Rational& c) {
      std::size_t idx = 0;
      for (std::size_t d = 0; d < ext.size(); ++d) idx = idx * static_cast<std::size_t>(std::max(ext[d], 1)) + static_cast<std::size_t>(e[d]);
      a[idx] = c;
    });
  }
  if (degrees) {
    degrees->clear();
    for (int e : ext) degrees->push_back(std::max(e, 1) - 1);
  }
  // per-dimension conversion b_j = sum_{i<=j} C(j,i)/C(n,i) a_i
  std::size_t stride = total;
  for (std::size_t d = 0; d < ext.size(); ++d) {
    const std::size_t n = static_cast<std::size_t>(std::max(ext[d], 1));
    stride /= n;
    if (n <= 1) continue;
    const std::size_t deg = n - 1;
    const std::size_t block = stride * n;
    std::vector<Rational> out(n);
    for (std::size_t base = 0; base < total; base += block)
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t j = 0; j < n; ++j) {
          Rational acc = 0;
          for (std::size_t i = 0; i <= j; ++i) {
            const Rational& ai = a[base + off + i * stride];
            if (ai == 0) continue;
            Rational w(binomial(static_cast<unsigned>(j), static_cast<unsigned>(i)),
                       binomial(static_cast<unsigned>(deg), static_cast<unsigned>(i)));
            w.canonicalize();
            acc += w * ai;
          }
          out[j] = acc;
        }
        for (std::size_t j = 0; j < n; ++j) a[base + off + j * stride] = out[j];
      }
  }
  return a;
}

SignVerdict bernstein_sign_certificate(const MPoly& p, const Box& box) {
  SignCertificateOptions o;
  o.max_depth = 8;
  o.max_boxes = 512;
  return certify_sign(p, box, o).verdict;
}

SignCertificateResult certify_sign(const MPoly& p, const Box& box, const SignCertificateOptions& opts) {
  SignCertificateResult res;
  const std::size_t dim = p.nvars();
  if (box.ranges.size() != dim) throw std::invalid_argument("box dimension mismatch");
  if (p.is_zero()) return res;
  for (const auto& r : box.ranges)
    if (r.first > r.second) throw std::invalid_argument("empty box range");
  if (opts.ordered)
    for (const auto& r : box.ranges)
      if (r != box.ranges.front()) throw std::invalid_argument("ordered certificate needs equal ranges");

  Tensor base = to_tensor(p);
  for (std::size_t d = 0; d < dim; ++d) {
    const Rational& lo = box.ranges[d].first;
    Rational len = box.ranges[d].second - lo;
    Integer C;
    mpz_lcm(C.get_mpz_t(), lo.get_den_mpz_t(), len.get_den_mpz_t());
    affine_dim(base, d, lo.get_num() * (C / lo.get_den()), len.get_num() * (C / len.get_den()), C);
  }
  strip_content(base);

  struct Node {
    Tensor t;
    std::vector<Integer> cell;  // integer cell coordinates at this level
    int level;
  };
  std::vector<Node> stack;
  stack.push_back({std::move(base), std::vector<Integer>(dim, Integer(0)), 0});
  int global = 0;
  const Rational& zone = opts.exclusion_zone;

  auto touches = [&](const Node& nd, const std::vector<bool>& corner) {
    Integer top;
    mpz_ui_pow_ui(top.get_mpz_t(), 2, static_cast<unsigned long>(nd.level));
    for (std::size_t d = 0; d < dim; ++d) {
      if (corner[d] ? nd.cell[d] != top - 1 : nd.cell[d] != 0) return false;
    }
    return true;
  };
  auto inside_zone = [&](const Node& nd, const std::vector<bool>& corner) {
    if (zone <= 0) return false;
    for (std::size_t d = 0; d < dim; ++d) {
      Rational lo(nd.cell[d]), hi(Integer(nd.cell[d] + 1));
      mpz_mul_2exp(lo.get_den_mpz_t(), lo.get_den_mpz_t(), static_cast<unsigned long>(nd.level));
      mpz_mul_2exp(hi.get_den_mpz_t(), hi.get_den_mpz_t(), static_cast<unsigned long>(nd.level));
      lo.canonicalize();
      hi.canonicalize();
      if (corner[d] ? lo < 1 - zone : hi > zone) return false;
    }
    return true;
  };

  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    bool skip = false;
    if (opts.ordered)
      for (std::size_t d = 1; d < dim; ++d)
        if (nd.cell[d - 1] > nd.cell[d]) skip = true;
    if (skip) continue;
    for (const auto& ec : opts.excluded_corners)
      if (inside_zone(nd, ec)) skip = true;
    if (skip) {
      ++res.skipped;
      continue;
    }
    ++res.boxes;
    res.depth = std::max(res.depth, nd.level);
    Tensor b = scaled_bernstein(nd.t);
    std::vector<std::size_t> allowed;
    for (const auto& zc : opts.zero_corners)
      if (touches(nd, zc)) allowed.push_back(corner_index(b, zc));
    int s = uniform_sign(b, allowed);
    if (s != 0) {
      if (global != 0 && s != global) return res;
      global = s;
      continue;
    }
    if (nd.level >= opts.max_depth || res.boxes + stack.size() >= opts.max_boxes) return res;
    // children over all 2^dim orthants
    for (std::size_t mask = (std::size_t{1} << dim); mask-- > 0;) {
      Node ch{nd.t, nd.cell, nd.level + 1};
      for (std::size_t d = 0; d < dim; ++d) {
        int bit = static_cast<int>((mask >> d) & 1);
        halve_dim(ch.t, d, bit);
        ch.cell[d] = 2 * nd.cell[d] + bit;
      }
      strip_content(ch.t);
      stack.push_back(std::move(ch));
    }
  }
  if (global > 0) res.verdict = SignVerdict::PositiveOnBox;
  if (global < 0) res.verdict = SignVerdict::NegativeOnBox;
  return res;
}

}  // namespace certicurve
