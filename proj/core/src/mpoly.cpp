#include "certicurve/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace certicurve {

MPoly::MPoly(std::size_t nvars) : n_(nvars), ext_(nvars, 0) {}

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
  MPoly p(nvars);
  if (c != 0) {
    std::vector<int> e(nvars, 0);
    p.add_to_coeff(e, c);
  }
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t var) {
  std::vector<int> e(nvars, 0);
  e[var] = 1;
  return monomial(nvars, e, 1);
}

MPoly MPoly::monomial(std::size_t nvars, std::span<const int> exps, const Rational& c) {
  MPoly p(nvars);
  p.add_to_coeff(exps, c);
  return p;
}

MPoly MPoly::from_univariate(const UPoly& u, std::size_t nvars, std::size_t var) {
  MPoly p(nvars);
  if (u.is_zero()) return p;
  std::vector<int> ext(nvars, 1);
  ext[var] = u.degree() + 1;
  p.ext_ = ext;
  p.c_.assign(u.coeffs().begin(), u.coeffs().end());
  return p;
}

std::vector<std::size_t> MPoly::strides() const {
  std::vector<std::size_t> s(n_, 1);
  for (std::size_t i = n_; i-- > 1;) s[i - 1] = s[i] * static_cast<std::size_t>(ext_[i]);
  return s;
}

std::size_t MPoly::index(std::span<const int> exps) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) idx = idx * static_cast<std::size_t>(ext_[i]) + static_cast<std::size_t>(exps[i]);
  return idx;
}

int MPoly::total_degree() const {
  int d = -1;
  for_each_term([&](std::span<const int> e, const Rational&) {
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  });
  return d;
}

bool MPoly::is_constant() const {
  return std::all_of(ext_.begin(), ext_.end(), [](int e) { return e <= 1; });
}

std::size_t MPoly::term_count() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& x) { return x != 0; }));
}

Rational MPoly::coeff(std::span<const int> exps) const {
  if (c_.empty()) return 0;
  for (std::size_t i = 0; i < n_; ++i)
    if (exps[i] < 0 || exps[i] >= ext_[i]) return 0;
  return c_[index(exps)];
}

void MPoly::reshape(const std::vector<int>& ext) {
  std::size_t total = 1;
  for (int e : ext) total *= static_cast<std::size_t>(e);
  std::vector<Rational> nc(total);
  if (!c_.empty()) {
    std::vector<int> e(n_, 0);
    for (std::size_t flat = 0; flat < c_.size(); ++flat) {
      if (c_[flat] != 0) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n_; ++i) idx = idx * static_cast<std::size_t>(ext[i]) + static_cast<std::size_t>(e[i]);
        nc[idx] = std::move(c_[flat]);
      }
      for (std::size_t i = n_; i-- > 0;) {
        if (++e[i] < ext_[i]) break;
        e[i] = 0;
      }
    }
  }
  ext_ = ext;
  c_ = std::move(nc);
  if (total == 0) c_.clear();
}

void MPoly::trim() {
  if (c_.empty()) return;
  std::vector<int> mx(n_, -1);
  std::vector<int> e(n_, 0);
  bool any = false;
  for (std::size_t flat = 0; flat < c_.size(); ++flat) {
    if (c_[flat] != 0) {
      any = true;
      for (std::size_t i = 0; i < n_; ++i) mx[i] = std::max(mx[i], e[i]);
    }
    for (std::size_t i = n_; i-- > 0;) {
      if (++e[i] < ext_[i]) break;
      e[i] = 0;
    }
  }
  if (!any) {
    c_.clear();
    std::fill(ext_.begin(), ext_.end(), 0);
    return;
  }
  std::vector<int> ext(n_);
  for (std::size_t i = 0; i < n_; ++i) ext[i] = mx[i] + 1;
  if (ext != ext_) reshape(ext);
}

void MPoly::add_to_coeff(std::span<const int> exps, const Rational& c) {
  if (c == 0) return;
  bool grow = c_.empty();
  std::vector<int> ext = ext_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (exps[i] < 0) throw std::invalid_argument("negative exponent");
    if (exps[i] >= ext[i] || c_.empty()) {
      ext[i] = std::max(ext[i], exps[i] + 1);
      grow = true;
    }
  }
  if (grow) {
    for (auto& e : ext) e = std::max(e, 1);
    reshape(ext);
  }
  c_[index(exps)] += c;
  if (c_[index(exps)] == 0) trim();
}

void MPoly::for_each_term(const std::function<void(std::span<const int>, const Rational&)>& f) const {
  if (c_.empty()) return;
  std::vector<int> e(n_, 0);
  for (std::size_t flat = 0; flat < c_.size(); ++flat) {
    if (c_[flat] != 0) f(e, c_[flat]);
    for (std::size_t i = n_; i-- > 0;) {
      if (++e[i] < ext_[i]) break;
      e[i] = 0;
    }
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("variable count mismatch");
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  if (o.ext_ == ext_) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  } else {
    std::vector<int> ext(n_);
    for (std::size_t i = 0; i < n_; ++i) ext[i] = std::max(ext_[i], o.ext_[i]);
    if (ext != ext_) reshape(ext);
    o.for_each_term([&](std::span<const int> e, const Rational& c) { c_[index(e)] += c; });
  }
  trim();
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly& MPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    std::fill(ext_.begin(), ext_.end(), 0);
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("variable count mismatch");
  MPoly r(a.n_);
  if (a.c_.empty() || b.c_.empty()) return r;
  std::vector<int> ext(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) ext[i] = a.ext_[i] + b.ext_[i] - 1;
  r.ext_ = ext;
  std::size_t total = 1;
  for (int e : ext) total *= static_cast<std::size_t>(e);
  r.c_.assign(total, Rational(0));
  auto rs = r.strides();
  auto offsets = [&](const MPoly& p, std::vector<std::size_t>& off, std::vector<const Rational*>& val) {
    p.for_each_term([&](std::span<const int> e, const Rational& c) {
      std::size_t o = 0;
      for (std::size_t i = 0; i < p.n_; ++i) o += static_cast<std::size_t>(e[i]) * rs[i];
      off.push_back(o);
      val.push_back(&c);
    });
  };
  std::vector<std::size_t> oa, ob;
  std::vector<const Rational*> va, vb;
  offsets(a, oa, va);
  offsets(b, ob, vb);
  Rational t;
  for (std::size_t i = 0; i < oa.size(); ++i)
    for (std::size_t j = 0; j < ob.size(); ++j) {
      mpq_mul(t.get_mpq_t(), va[i]->get_mpq_t(), vb[j]->get_mpq_t());
      r.c_[oa[i] + ob[j]] += t;
    }
  r.trim();
  return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.n_ != b.n_) return false;
  return a.ext_ == b.ext_ && a.c_ == b.c_;
}

Rational MPoly::eval(std::span<const Rational> x) const {
  Rational s = 0;
  for_each_term([&](std::span<const int> e, const Rational& c) {
    Rational t = c;
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i]) t *= pow(x[i], static_cast<unsigned>(e[i]));
    s += t;
  });
  return s;
}

double MPoly::eval(std::span<const double> x) const {
  double s = 0;
  for_each_term([&](std::span<const int> e, const Rational& c) {
    double t = c.get_d();
    for (std::size_t i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  });
  return s;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r(n_);
  std::vector<int> f(n_);
  for_each_term([&](std::span<const int> e, const Rational& c) {
    if (e[var] == 0) return;
    std::copy(e.begin(), e.end(), f.begin());
    f[var] -= 1;
    r.add_to_coeff(f, c * e[var]);
  });
  return r;
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const {
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(ext_.empty() ? 0 : ext_[var], 0)), MPoly(n_));
  std::vector<int> f(n_);
  for_each_term([&](std::span<const int> e, const Rational& c) {
    std::copy(e.begin(), e.end(), f.begin());
    f[var] = 0;
    out[static_cast<std::size_t>(e[var])].add_to_coeff(f, c);
  });
  return out;
}

MPoly MPoly::compose(std::size_t var, const MPoly& q) const {
  auto cs = coefficients_in(var);
  MPoly r(n_);
  for (std::size_t k = cs.size(); k-- > 0;) {
    r = r * q;
    r += cs[k];
  }
  return r;
}

MPoly MPoly::substitute(std::size_t var, const Rational& value) const {
  return compose(var, MPoly::constant(n_, value));
}

MPoly MPoly::affine_substitute(std::size_t var, const Rational& offset, const Rational& scale) const {
  return compose(var, MPoly::constant(n_, offset) + MPoly::variable(n_, var) * scale);
}

UPoly MPoly::to_univariate(std::size_t var) const {
  std::vector<Rational> v;
  for_each_term([&](std::span<const int> e, const Rational& c) {
    for (std::size_t i = 0; i < n_; ++i)
      if (i != var && e[i] != 0) throw std::domain_error("polynomial is not univariate");
    auto k = static_cast<std::size_t>(e[var]);
    if (v.size() <= k) v.resize(k + 1);
    v[k] += c;
  });
  return UPoly(std::move(v));
}

MPoly MPoly::remap(std::size_t nvars, std::span<const std::size_t> map) const {
  MPoly r(nvars);
  std::vector<int> f(nvars);
  for_each_term([&](std::span<const int> e, const Rational& c) {
    std::fill(f.begin(), f.end(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (map[i] >= nvars) throw std::invalid_argument("variable dropped by remap");
      f[map[i]] += e[i];
    }
    r.add_to_coeff(f, c);
  });
  return r;
}

std::optional<MPoly> MPoly::divide_by_difference(std::size_t i, std::size_t j) const {
  if (c_.empty()) return MPoly(n_);
  auto cs = coefficients_in(j);
  if (cs.size() < 2) return std::nullopt;
  MPoly xi = MPoly::variable(n_, i);
  std::vector<MPoly> q(cs.size() - 1, MPoly(n_));
  MPoly acc(n_);
  for (std::size_t k = cs.size() - 1; k >= 1; --k) {
    acc = acc * xi + cs[k];
    q[k - 1] = acc;
  }
  MPoly rem = acc * xi + cs[0];
  if (!rem.is_zero()) return std::nullopt;
  MPoly r(n_);
  MPoly xj = MPoly::variable(n_, j);
  for (std::size_t k = q.size(); k-- > 0;) {
    r = r * xj;
    r += q[k];
  }
  return r;
}

int MPoly::strip_difference(std::size_t i, std::size_t j) {
  int k = 0;
  while (!is_zero()) {
    auto q = divide_by_difference(i, j);
    if (!q) break;
    *this = std::move(*q);
    ++k;
  }
  return k;
}

MPoly MPoly::identify(std::size_t i, std::size_t j) const { return compose(j, MPoly::variable(n_, i)); }

std::string MPoly::to_string(std::span<const std::string> names) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for_each_term([&](std::span<const int> e, const Rational& c) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    for (std::size_t i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      os << "*" << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  });
  return os.str();
}

}  // namespace certicurve
