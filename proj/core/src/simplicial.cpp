#include "cleave/simplicial.hpp"

#include <algorithm>
#include <cassert>

#include "cleave/error.hpp"

namespace cleave {

namespace {

std::string op(const char* f, int i) { return std::string(f) + std::to_string(i); }

std::string at_cell(int n, int c) {
  return " at level " + std::to_string(n) + ", cell " + std::to_string(c);
}

std::string at_bicell(int m, int n, int c) {
  return " at (" + std::to_string(m) + "," + std::to_string(n) + "), cell " +
         std::to_string(c);
}

void alloc_ops(SSet& x) {
  for (int n = 0; n <= x.cap; ++n)
    for (int i = 0; i <= n; ++i) {
      if (n >= 1) x.face[n][i].assign(x.size(n), -1);
      if (n < x.cap) x.degen[n][i].assign(x.size(n), -1);
    }
}

void alloc_ops(BiSSet& x) {
  for (int m = 0; m <= x.mcap; ++m)
    for (int n = 0; n <= x.ncap; ++n) {
      int sz = x.size(m, n);
      for (int i = 0; i <= m; ++i) {
        if (m >= 1) x.vface[m][n][i].assign(sz, -1);
        if (m < x.mcap) x.vdegen[m][n][i].assign(sz, -1);
      }
      for (int i = 0; i <= n; ++i) {
        if (n >= 1) x.hface[m][n][i].assign(sz, -1);
        if (n < x.ncap) x.hdegen[m][n][i].assign(sz, -1);
      }
    }
}

} // namespace

// ------------------------------------------------------------------- SSet

int SSet::index_of(int n, const Key& k) const {
  const auto& v = cells[n];
  auto it = std::lower_bound(v.begin(), v.end(), k);
  if (it != v.end() && *it == k) return static_cast<int>(it - v.begin());
  return -1;
}

void SSet::shape(int c) {
  cap = c;
  cells.assign(cap + 1, {});
  face.assign(cap + 1, {});
  degen.assign(cap + 1, {});
  degenerate.assign(cap + 1, {});
  for (int n = 0; n <= cap; ++n) {
    face[n].resize(n + 1);
    degen[n].resize(n + 1);
  }
}

void SSet::finish() {
  for (int n = 0; n <= cap; ++n) degenerate[n].assign(size(n), 0);
  for (int n = 0; n + 1 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int c = 0; c < size(n); ++c) degenerate[n + 1][degen[n][j][c]] = 1;
}

std::optional<std::string> SSet::check() const {
  // table shapes and index ranges
  for (int n = 0; n <= cap; ++n) {
    for (int i = 0; i <= n && n >= 1; ++i) {
      if (static_cast<int>(face[n][i].size()) != size(n))
        return op("d", i) + " has wrong size" + at_cell(n, -1);
      for (int c = 0; c < size(n); ++c)
        if (face[n][i][c] < 0 || face[n][i][c] >= size(n - 1))
          return op("d", i) + " out of range" + at_cell(n, c);
    }
    for (int j = 0; j <= n && n < cap; ++j) {
      if (static_cast<int>(degen[n][j].size()) != size(n))
        return op("s", j) + " has wrong size" + at_cell(n, -1);
      for (int c = 0; c < size(n); ++c)
        if (degen[n][j][c] < 0 || degen[n][j][c] >= size(n + 1))
          return op("s", j) + " out of range" + at_cell(n, c);
    }
  }
  for (int n = 2; n <= cap; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (int c = 0; c < size(n); ++c)
          if (d(n - 1, i, d(n, j, c)) != d(n - 1, j - 1, d(n, i, c)))
            return op("d", i) + "." + op("d", j) + " != " + op("d", j - 1) + "." +
                   op("d", i) + at_cell(n, c);
  for (int n = 0; n + 2 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        for (int c = 0; c < size(n); ++c)
          if (s(n + 1, i, s(n, j, c)) != s(n + 1, j + 1, s(n, i, c)))
            return op("s", i) + "." + op("s", j) + " != " + op("s", j + 1) + "." +
                   op("s", i) + at_cell(n, c);
  for (int n = 0; n + 1 <= cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i)
        for (int c = 0; c < size(n); ++c) {
          int lhs = d(n + 1, i, s(n, j, c));
          if (i == j || i == j + 1) {
            if (lhs != c)
              return op("d", i) + "." + op("s", j) + " != id" + at_cell(n, c);
          } else if (i < j) {
            if (lhs != s(n - 1, j - 1, d(n, i, c)))
              return op("d", i) + "." + op("s", j) + " != " + op("s", j - 1) + "." +
                     op("d", i) + at_cell(n, c);
          } else { // i > j + 1
            if (lhs != s(n - 1, j, d(n, i - 1, c)))
              return op("d", i) + "." + op("s", j) + " != " + op("s", j) + "." +
                     op("d", i - 1) + at_cell(n, c);
          }
        }
  return std::nullopt;
}

void SSet::validate(const std::string& kind) const {
  auto r = check();
  require(!r.has_value(), kind, r.value_or(""));
}

void validate_smap(const SMap& f) {
  require(f.src->cap == f.dst->cap, "ValidationError",
          "map " + f.name + ": caps differ");
  int cap = f.src->cap;
  require(static_cast<int>(f.map.size()) == cap + 1, "ValidationError",
          "map " + f.name + ": wrong shape");
  for (int n = 0; n <= cap; ++n) {
    require(static_cast<int>(f.map[n].size()) == f.src->size(n), "ValidationError",
            "map " + f.name + ": wrong shape at level " + std::to_string(n));
    for (int c = 0; c < f.src->size(n); ++c)
      require(f.at(n, c) >= 0 && f.at(n, c) < f.dst->size(n), "ValidationError",
              "map " + f.name + ": image out of range" + at_cell(n, c));
  }
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n; ++i)
      for (int c = 0; c < f.src->size(n); ++c)
        require(f.dst->d(n, i, f.at(n, c)) == f.at(n - 1, f.src->d(n, i, c)),
                "ValidationError",
                "map " + f.name + " does not commute with " + op("d", i) +
                    at_cell(n, c));
  for (int n = 0; n < cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int c = 0; c < f.src->size(n); ++c)
        require(f.dst->s(n, j, f.at(n, c)) == f.at(n + 1, f.src->s(n, j, c)),
                "ValidationError",
                "map " + f.name + " does not commute with " + op("s", j) +
                    at_cell(n, c));
}

bool is_level_bijection(const SMap& f) {
  for (int n = 0; n <= f.src->cap; ++n) {
    if (f.src->size(n) != f.dst->size(n)) return false;
    std::vector<char> hit(f.dst->size(n), 0);
    for (int c = 0; c < f.src->size(n); ++c) {
      if (hit[f.at(n, c)]) return false;
      hit[f.at(n, c)] = 1;
    }
  }
  return true;
}

SMap compose(const SMap& g, const SMap& f) {
  assert(f.dst == g.src);
  SMap r;
  r.name = g.name + "." + f.name;
  r.src = f.src;
  r.dst = g.dst;
  r.map.resize(f.map.size());
  for (int n = 0; n < (int)f.map.size(); ++n) {
    r.map[n].resize(f.map[n].size());
    for (int c = 0; c < (int)f.map[n].size(); ++c)
      r.map[n][c] = g.at(n, f.at(n, c));
  }
  return r;
}

// ------------------------------------------------------------------ BiSSet

int BiSSet::index_of(int m, int n, const Key& k) const {
  const auto& v = cells[m][n];
  auto it = std::lower_bound(v.begin(), v.end(), k);
  if (it != v.end() && *it == k) return static_cast<int>(it - v.begin());
  return -1;
}

void BiSSet::shape(int mc, int nc) {
  mcap = mc;
  ncap = nc;
  cells.assign(mcap + 1, std::vector<std::vector<Key>>(ncap + 1));
  auto blank = std::vector<std::vector<std::vector<std::vector<int>>>>(
      mcap + 1, std::vector<std::vector<std::vector<int>>>(ncap + 1));
  vface = blank;
  hface = blank;
  vdegen = blank;
  hdegen = blank;
  for (int m = 0; m <= mcap; ++m)
    for (int n = 0; n <= ncap; ++n) {
      vface[m][n].resize(m + 1);
      vdegen[m][n].resize(m + 1);
      hface[m][n].resize(n + 1);
      hdegen[m][n].resize(n + 1);
    }
}

std::optional<std::string> BiSSet::check() const {
  // ranges
  for (int m = 0; m <= mcap; ++m)
    for (int n = 0; n <= ncap; ++n) {
      int sz = size(m, n);
      for (int i = 0; i <= m && m >= 1; ++i)
        for (int c = 0; c < sz; ++c)
          if (dv(m, n, i, c) < 0 || dv(m, n, i, c) >= size(m - 1, n))
            return op("dv", i) + " out of range" + at_bicell(m, n, c);
      for (int i = 0; i <= n && n >= 1; ++i)
        for (int c = 0; c < sz; ++c)
          if (dh(m, n, i, c) < 0 || dh(m, n, i, c) >= size(m, n - 1))
            return op("dh", i) + " out of range" + at_bicell(m, n, c);
      for (int i = 0; i <= m && m < mcap; ++i)
        for (int c = 0; c < sz; ++c)
          if (sv(m, n, i, c) < 0 || sv(m, n, i, c) >= size(m + 1, n))
            return op("sv", i) + " out of range" + at_bicell(m, n, c);
      for (int i = 0; i <= n && n < ncap; ++i)
        for (int c = 0; c < sz; ++c)
          if (sh(m, n, i, c) < 0 || sh(m, n, i, c) >= size(m, n + 1))
            return op("sh", i) + " out of range" + at_bicell(m, n, c);
    }

  // each row and column is simplicial: reuse the one-directional checker
  for (int n = 0; n <= ncap; ++n) {
    SSet col;
    col.shape(mcap);
    for (int m = 0; m <= mcap; ++m) {
      col.cells[m] = cells[m][n];
      for (int i = 0; i <= m; ++i) {
        if (m >= 1) col.face[m][i] = vface[m][n][i];
        if (m < mcap) col.degen[m][i] = vdegen[m][n][i];
      }
    }
    if (auto r = col.check())
      return "vertical " + *r + " (column n=" + std::to_string(n) + ")";
  }
  for (int m = 0; m <= mcap; ++m) {
    SSet row;
    row.shape(ncap);
    for (int n = 0; n <= ncap; ++n) {
      row.cells[n] = cells[m][n];
      for (int i = 0; i <= n; ++i) {
        if (n >= 1) row.face[n][i] = hface[m][n][i];
        if (n < ncap) row.degen[n][i] = hdegen[m][n][i];
      }
    }
    if (auto r = row.check())
      return "horizontal " + *r + " (row m=" + std::to_string(m) + ")";
  }

  // the two directions commute
  for (int m = 0; m <= mcap; ++m)
    for (int n = 0; n <= ncap; ++n)
      for (int c = 0; c < size(m, n); ++c) {
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= n; ++j) {
            if (m >= 1 && n >= 1 &&
                dh(m - 1, n, j, dv(m, n, i, c)) != dv(m, n - 1, i, dh(m, n, j, c)))
              return op("dv", i) + "." + op("dh", j) + " != " + op("dh", j) + "." +
                     op("dv", i) + at_bicell(m, n, c);
            if (m >= 1 && n < ncap &&
                sh(m - 1, n, j, dv(m, n, i, c)) != dv(m, n + 1, i, sh(m, n, j, c)))
              return op("dv", i) + "." + op("sh", j) + " != " + op("sh", j) + "." +
                     op("dv", i) + at_bicell(m, n, c);
            if (m < mcap && n >= 1 &&
                dh(m + 1, n, j, sv(m, n, i, c)) != sv(m, n - 1, i, dh(m, n, j, c)))
              return op("sv", i) + "." + op("dh", j) + " != " + op("dh", j) + "." +
                     op("sv", i) + at_bicell(m, n, c);
            if (m < mcap && n < ncap &&
                sh(m + 1, n, j, sv(m, n, i, c)) != sv(m, n + 1, i, sh(m, n, j, c)))
              return op("sv", i) + "." + op("sh", j) + " != " + op("sh", j) + "." +
                     op("sv", i) + at_bicell(m, n, c);
          }
      }
  return std::nullopt;
}

void BiSSet::validate(const std::string& kind) const {
  auto r = check();
  require(!r.has_value(), kind, r.value_or(""));
}

void validate_bimap(const BiMap& f) {
  require(f.src->mcap == f.dst->mcap && f.src->ncap == f.dst->ncap,
          "ValidationError", "map " + f.name + ": caps differ");
  for (int m = 0; m <= f.src->mcap; ++m)
    for (int n = 0; n <= f.src->ncap; ++n) {
      require(static_cast<int>(f.map[m][n].size()) == f.src->size(m, n),
              "ValidationError", "map " + f.name + ": wrong shape");
      for (int c = 0; c < f.src->size(m, n); ++c) {
        int fc = f.at(m, n, c);
        require(fc >= 0 && fc < f.dst->size(m, n), "ValidationError",
                "map " + f.name + ": image out of range" + at_bicell(m, n, c));
        for (int i = 0; i <= m && m >= 1; ++i)
          require(f.dst->dv(m, n, i, fc) == f.at(m - 1, n, f.src->dv(m, n, i, c)),
                  "ValidationError",
                  "map " + f.name + " does not commute with " + op("dv", i) +
                      at_bicell(m, n, c));
        for (int i = 0; i <= n && n >= 1; ++i)
          require(f.dst->dh(m, n, i, fc) == f.at(m, n - 1, f.src->dh(m, n, i, c)),
                  "ValidationError",
                  "map " + f.name + " does not commute with " + op("dh", i) +
                      at_bicell(m, n, c));
        for (int i = 0; i <= m && m < f.src->mcap; ++i)
          require(f.dst->sv(m, n, i, fc) == f.at(m + 1, n, f.src->sv(m, n, i, c)),
                  "ValidationError",
                  "map " + f.name + " does not commute with " + op("sv", i) +
                      at_bicell(m, n, c));
        for (int i = 0; i <= n && n < f.src->ncap; ++i)
          require(f.dst->sh(m, n, i, fc) == f.at(m, n + 1, f.src->sh(m, n, i, c)),
                  "ValidationError",
                  "map " + f.name + " does not commute with " + op("sh", i) +
                      at_bicell(m, n, c));
      }
    }
}

bool is_level_bijection(const BiMap& f) {
  for (int m = 0; m <= f.src->mcap; ++m)
    for (int n = 0; n <= f.src->ncap; ++n) {
      if (f.src->size(m, n) != f.dst->size(m, n)) return false;
      std::vector<char> hit(f.dst->size(m, n), 0);
      for (int c = 0; c < f.src->size(m, n); ++c) {
        if (hit[f.at(m, n, c)]) return false;
        hit[f.at(m, n, c)] = 1;
      }
    }
  return true;
}

// ------------------------------------------------------------------- nerve

SSPtr nerve(CatPtr c, int cap) {
  auto x = std::make_shared<SSet>();
  x->name = "N(" + c->name + ")";
  x->shape(cap);
  for (int o = 0; o < c->objects(); ++o) x->cells[0].push_back({o});
  for (int n = 1; n <= cap; ++n) {
    for (const Key& prev : x->cells[n - 1]) {
      int tail = (n == 1) ? static_cast<int>(prev[0]) : c->dst[prev.back()];
      for (int f = 0; f < c->arrows(); ++f) {
        if (c->src[f] != tail) continue;
        Key k = (n == 1) ? Key{} : prev;
        k.push_back(f);
        x->cells[n].push_back(std::move(k));
      }
    }
    std::sort(x->cells[n].begin(), x->cells[n].end());
  }
  alloc_ops(*x);
  for (int n = 1; n <= cap; ++n)
    for (int ci = 0; ci < x->size(n); ++ci) {
      const Key& k = x->cells[n][ci];
      for (int i = 0; i <= n; ++i) {
        Key r;
        if (n == 1) {
          r = {i == 0 ? c->dst[k[0]] : c->src[k[0]]};
        } else if (i == 0) {
          r = Key(k.begin() + 1, k.end());
        } else if (i == n) {
          r = Key(k.begin(), k.end() - 1);
        } else {
          r = k;
          r[i - 1] = c->compose(static_cast<int>(k[i]), static_cast<int>(k[i - 1]));
          r.erase(r.begin() + i);
        }
        int t = x->index_of(n - 1, r);
        assert(t >= 0);
        x->face[n][i][ci] = t;
      }
    }
  for (int n = 0; n < cap; ++n)
    for (int ci = 0; ci < x->size(n); ++ci) {
      const Key& k = x->cells[n][ci];
      for (int j = 0; j <= n; ++j) {
        Key r = (n == 0) ? Key{} : k;
        int xj = (n == 0) ? static_cast<int>(k[0])
                 : (j == 0 ? c->src[k[0]] : c->dst[k[j - 1]]);
        r.insert(r.begin() + j, c->id_arrow[xj]);
        int t = x->index_of(n + 1, r);
        assert(t >= 0);
        x->degen[n][j][ci] = t;
      }
    }
  x->finish();
  x->validate();
  return x;
}

SMap nerve_map(const Functor& u, SSPtr src, SSPtr dst) {
  SMap f;
  f.name = "N(" + u.name + ")";
  f.src = src;
  f.dst = dst;
  f.map.resize(src->cap + 1);
  for (int n = 0; n <= src->cap; ++n) {
    f.map[n].resize(src->size(n));
    for (int ci = 0; ci < src->size(n); ++ci) {
      Key k = src->cells[n][ci];
      if (n == 0)
        k[0] = u.ob[k[0]];
      else
        for (long long& a : k) a = u.fl[a];
      int t = dst->index_of(n, k);
      require(t >= 0, "ValidationError",
              "nerve map " + f.name + ": image cell missing" + at_cell(n, ci));
      f.map[n][ci] = t;
    }
  }
  validate_smap(f);
  return f;
}

SSPtr sset_product(SSPtr a, SSPtr b) {
  auto x = std::make_shared<SSet>();
  x->name = a->name + "x" + b->name;
  x->shape(std::min(a->cap, b->cap));
  for (int n = 0; n <= x->cap; ++n)
    for (int ca = 0; ca < a->size(n); ++ca)
      for (int cb = 0; cb < b->size(n); ++cb) x->cells[n].push_back({ca, cb});
  alloc_ops(*x);
  for (int n = 0; n <= x->cap; ++n)
    for (int ci = 0; ci < x->size(n); ++ci) {
      int ca = static_cast<int>(x->cells[n][ci][0]);
      int cb = static_cast<int>(x->cells[n][ci][1]);
      for (int i = 0; i <= n && n >= 1; ++i)
        x->face[n][i][ci] = x->index_of(n - 1, {a->d(n, i, ca), b->d(n, i, cb)});
      for (int j = 0; j <= n && n < x->cap; ++j)
        x->degen[n][j][ci] = x->index_of(n + 1, {a->s(n, j, ca), b->s(n, j, cb)});
    }
  x->finish();
  x->validate();
  return x;
}

// --------------------------------------------------- diagonal / codiagonal

SSPtr diagonal(BiPtr k) {
  auto x = std::make_shared<SSet>();
  x->name = "diag(" + k->name + ")";
  x->shape(std::min(k->mcap, k->ncap));
  for (int n = 0; n <= x->cap; ++n)
    for (int c = 0; c < k->size(n, n); ++c) x->cells[n].push_back({c});
  alloc_ops(*x);
  for (int n = 0; n <= x->cap; ++n)
    for (int c = 0; c < k->size(n, n); ++c) {
      for (int i = 0; i <= n && n >= 1; ++i)
        x->face[n][i][c] = k->dv(n, n - 1, i, k->dh(n, n, i, c));
      for (int j = 0; j <= n && n < x->cap; ++j)
        x->degen[n][j][c] = k->sv(n, n + 1, j, k->sh(n, n, j, c));
    }
  x->finish();
  x->validate();
  return x;
}

SSPtr codiagonal(BiPtr k) {
  auto x = std::make_shared<SSet>();
  x->name = "codiag(" + k->name + ")";
  x->shape(std::min(k->mcap, k->ncap));
  for (int n = 0; n <= x->cap; ++n) {
    // grow matched tuples x_0, ..., x_n with x_i at (i, n-i)
    std::vector<Key> partial{{}};
    for (int i = 0; i <= n; ++i) {
      std::vector<Key> next;
      for (const Key& t : partial)
        for (int c = 0; c < k->size(i, n - i); ++c) {
          if (i > 0) {
            int prev = static_cast<int>(t.back());
            if (k->dh(i - 1, n - i + 1, 0, prev) != k->dv(i, n - i, i, c)) continue;
          }
          Key e = t;
          e.push_back(c);
          next.push_back(std::move(e));
        }
      partial = std::move(next);
    }
    x->cells[n] = std::move(partial);
    std::sort(x->cells[n].begin(), x->cells[n].end());
  }
  alloc_ops(*x);
  for (int n = 0; n <= x->cap; ++n)
    for (int ci = 0; ci < x->size(n); ++ci) {
      const Key& t = x->cells[n][ci];
      for (int i = 0; i <= n && n >= 1; ++i) {
        Key r(n);
        for (int j = 0; j < i; ++j)
          r[j] = k->dh(j, n - j, i - j, static_cast<int>(t[j]));
        for (int j = i; j < n; ++j)
          r[j] = k->dv(j + 1, n - j - 1, i, static_cast<int>(t[j + 1]));
        int idx = x->index_of(n - 1, r);
        assert(idx >= 0);
        x->face[n][i][ci] = idx;
      }
      for (int j = 0; j <= n && n < x->cap; ++j) {
        Key r(n + 2);
        for (int l = 0; l <= j; ++l)
          r[l] = k->sh(l, n - l, j - l, static_cast<int>(t[l]));
        for (int l = j + 1; l <= n + 1; ++l)
          r[l] = k->sv(l - 1, n - l + 1, j, static_cast<int>(t[l - 1]));
        int idx = x->index_of(n + 1, r);
        assert(idx >= 0);
        x->degen[n][j][ci] = idx;
      }
    }
  x->finish();
  x->validate();
  return x;
}

SMap theta(BiPtr k, SSPtr diag, SSPtr codiag) {
  SMap f;
  f.name = "theta";
  f.src = diag;
  f.dst = codiag;
  f.map.resize(diag->cap + 1);
  for (int n = 0; n <= diag->cap; ++n) {
    f.map[n].resize(diag->size(n));
    for (int ci = 0; ci < diag->size(n); ++ci) {
      int start = static_cast<int>(diag->cells[n][ci][0]);
      Key r(n + 1);
      for (int i = 0; i <= n; ++i) {
        int cur = start;
        for (int s = 0; s < i; ++s) cur = k->dh(n, n - s, 0, cur);
        for (int s = 0; s < n - i; ++s) cur = k->dv(n - s, n - i, i + 1, cur);
        r[i] = cur;
      }
      int idx = codiag->index_of(n, r);
      assert(idx >= 0);
      f.map[n][ci] = idx;
    }
  }
  validate_smap(f);
  return f;
}

// ----------------------------------------------------------------- hocolim

void validate_sset_diagram(const DiagramOfSSets& z) {
  const FiniteCategory& b = *z.base;
  std::string who = z.name.empty() ? "diagram" : "diagram " + z.name;
  require(static_cast<int>(z.value.size()) == b.objects(), "ValidationError",
          who + ": values missing for some objects");
  require(static_cast<int>(z.map.size()) == b.arrows(), "ValidationError",
          who + ": maps missing for some arrows");
  for (int x = 1; x < b.objects(); ++x)
    require(z.value[x]->cap == z.value[0]->cap, "ValidationError",
            who + ": values have different caps");
  for (int phi = 0; phi < b.arrows(); ++phi) {
    require(z.map[phi].src == z.value[b.src[phi]] &&
                z.map[phi].dst == z.value[b.dst[phi]],
            "ValidationError",
            who + ": map for '" + b.arrow_name[phi] + "' has wrong endpoints");
    validate_smap(z.map[phi]);
  }
  for (int x = 0; x < b.objects(); ++x) {
    const SMap& m = z.map[b.id_arrow[x]];
    for (int n = 0; n <= z.value[x]->cap; ++n)
      for (int c = 0; c < z.value[x]->size(n); ++c)
        require(m.at(n, c) == c, "ValidationError",
                who + ": identity of '" + b.object_name[x] + "' not the identity");
  }
  for (int g = 0; g < b.arrows(); ++g)
    for (int f = 0; f < b.arrows(); ++f) {
      if (!b.composable(g, f)) continue;
      const SMap& gf = z.map[b.compose(g, f)];
      for (int n = 0; n <= gf.src->cap; ++n)
        for (int c = 0; c < gf.src->size(n); ++c)
          require(gf.at(n, c) == z.map[g].at(n, z.map[f].at(n, c)),
                  "ValidationError",
                  who + ": not functorial on (" + b.arrow_name[g] + ", " +
                      b.arrow_name[f] + ")");
    }
}

DiagramOfSSets nerve_diagram(const DiagramOfCategories& z, int cap) {
  validate_diagram(z);
  DiagramOfSSets out;
  out.name = "N(" + z.name + ")";
  out.base = z.base;
  for (const CatPtr& c : z.value) out.value.push_back(nerve(c, cap));
  for (int phi = 0; phi < z.base->arrows(); ++phi)
    out.map.push_back(nerve_map(z.map[phi], out.value[z.base->src[phi]],
                                out.value[z.base->dst[phi]]));
  validate_sset_diagram(out);
  return out;
}

Hc hc(const DiagramOfSSets& z, int ncap) {
  validate_sset_diagram(z);
  const FiniteCategory& b = *z.base;
  Hc out;
  out.base_nerve = nerve(z.base, ncap);
  const SSet& bn = *out.base_nerve;
  int mcap = z.value.empty() ? 0 : z.value[0]->cap;

  auto head = [&](int n, int bc) -> int {
    const Key& k = bn.cells[n][bc];
    return n == 0 ? static_cast<int>(k[0]) : b.src[k[0]];
  };

  auto x = std::make_shared<BiSSet>();
  x->name = "hc(" + z.name + ")";
  x->shape(mcap, ncap);
  for (int m = 0; m <= mcap; ++m)
    for (int n = 0; n <= ncap; ++n)
      for (int bc = 0; bc < bn.size(n); ++bc)
        for (int zc = 0; zc < z.value[head(n, bc)]->size(m); ++zc)
          x->cells[m][n].push_back({bc, zc});
  alloc_ops(*x);
  for (int m = 0; m <= mcap; ++m)
    for (int n = 0; n <= ncap; ++n)
      for (int ci = 0; ci < x->size(m, n); ++ci) {
        int bc = static_cast<int>(x->cells[m][n][ci][0]);
        int zc = static_cast<int>(x->cells[m][n][ci][1]);
        const SSet& zv = *z.value[head(n, bc)];
        for (int i = 0; i <= m && m >= 1; ++i)
          x->vface[m][n][i][ci] = x->index_of(m - 1, n, {bc, zv.d(m, i, zc)});
        for (int j = 0; j <= m && m < mcap; ++j)
          x->vdegen[m][n][j][ci] = x->index_of(m + 1, n, {bc, zv.s(m, j, zc)});
        for (int i = 0; i <= n && n >= 1; ++i) {
          int bc2 = bn.d(n, i, bc);
          int zc2 = zc;
          if (i == 0) zc2 = z.map[bn.cells[n][bc][0]].at(m, zc);
          x->hface[m][n][i][ci] = x->index_of(m, n - 1, {bc2, zc2});
        }
        for (int j = 0; j <= n && n < ncap; ++j)
          x->hdegen[m][n][j][ci] = x->index_of(m, n + 1, {bn.s(n, j, bc), zc});
      }
  x->validate();
  out.bis = x;
  return out;
}

// ----------------------------------------------------------- group actions

void validate_action(const CatGroupAction& a) {
  std::string who = a.name.empty() ? "action" : "action " + a.name;
  require(a.group->objects() == 1, "ValidationError",
          who + ": acting category must have one object");
  require(static_cast<int>(a.by.size()) == a.group->arrows(), "ValidationError",
          who + ": functors missing for some elements");
  for (int g = 0; g < a.group->arrows(); ++g) {
    require(same_category(*a.by[g].dom, *a.cat) && same_category(*a.by[g].cod, *a.cat),
            "ValidationError", who + ": functor endpoints are wrong");
    validate_functor(a.by[g]);
  }
  require(functors_equal(a.by[a.group->id_arrow[0]], identity_functor(a.cat)),
          "ValidationError", who + ": unit does not act as the identity");
  for (int g = 0; g < a.group->arrows(); ++g)
    for (int h = 0; h < a.group->arrows(); ++h)
      require(functors_equal(a.by[a.group->compose(g, h)], compose(a.by[g], a.by[h])),
              "ValidationError",
              who + ": not functorial on (" + a.group->arrow_name[g] + ", " +
                  a.group->arrow_name[h] + ")");
}

DiagramOfCategories action_diagram(const CatGroupAction& a) {
  DiagramOfCategories z;
  z.name = a.name;
  z.base = a.group;
  z.value = {a.cat};
  z.map = a.by;
  validate_diagram(z);
  return z;
}

void validate_action(const SimplicialGroupAction& a) {
  std::string who = a.name.empty() ? "action" : "action " + a.name;
  require(a.group->objects() == 1, "ValidationError",
          who + ": acting category must have one object");
  require(static_cast<int>(a.act.size()) == a.group->arrows(), "ValidationError",
          who + ": tables missing for some elements");
  for (int g = 0; g < a.group->arrows(); ++g) {
    SMap m;
    m.name = who + "[" + a.group->arrow_name[g] + "]";
    m.src = a.space;
    m.dst = a.space;
    m.map = a.act[g];
    validate_smap(m);
  }
  int e = a.group->id_arrow[0];
  for (int n = 0; n <= a.space->cap; ++n)
    for (int c = 0; c < a.space->size(n); ++c)
      require(a.act[e][n][c] == c, "ValidationError",
              who + ": unit does not act as the identity");
  for (int g = 0; g < a.group->arrows(); ++g)
    for (int h = 0; h < a.group->arrows(); ++h) {
      int gh = a.group->compose(g, h);
      for (int n = 0; n <= a.space->cap; ++n)
        for (int c = 0; c < a.space->size(n); ++c)
          require(a.act[gh][n][c] == a.act[g][n][a.act[h][n][c]], "ValidationError",
                  who + ": not functorial on (" + a.group->arrow_name[g] + ", " +
                      a.group->arrow_name[h] + ")");
    }
}

SimplicialGroupAction nerve_action(const CatGroupAction& a, int cap) {
  validate_action(a);
  SimplicialGroupAction out;
  out.name = "N(" + a.name + ")";
  out.group = a.group;
  out.space = nerve(a.cat, cap);
  for (int g = 0; g < a.group->arrows(); ++g)
    out.act.push_back(nerve_map(a.by[g], out.space, out.space).map);
  validate_action(out);
  return out;
}

TwistingFunction canonical_twisting(CatPtr group, SSPtr group_nerve) {
  TwistingFunction t;
  t.group = group;
  t.base = group_nerve;
  t.tau.resize(group_nerve->cap + 1);
  for (int n = 1; n <= group_nerve->cap; ++n) {
    t.tau[n].resize(group_nerve->size(n));
    for (int c = 0; c < group_nerve->size(n); ++c)
      t.tau[n][c] = static_cast<int>(group_nerve->cells[n][c][0]);
  }
  return t;
}

SSPtr twisted_cartesian_product(const SimplicialGroupAction& f,
                                const TwistingFunction& t) {
  require(same_category(*f.group, *t.group), "ValidationError",
          "twisted product: actions of different groups");
  const SSet& a = *f.space;
  const SSet& b = *t.base;
  auto x = std::make_shared<SSet>();
  x->name = "tcp(" + a.name + "," + b.name + ")";
  x->shape(std::min(a.cap, b.cap));
  require(static_cast<int>(t.tau.size()) > x->cap, "ValidationError",
          "twisted product: twisting function has wrong shape");
  for (int n = 0; n <= x->cap; ++n)
    for (int ca = 0; ca < a.size(n); ++ca)
      for (int cb = 0; cb < b.size(n); ++cb) x->cells[n].push_back({ca, cb});
  alloc_ops(*x);
  for (int n = 0; n <= x->cap; ++n)
    for (int ci = 0; ci < x->size(n); ++ci) {
      int ca = static_cast<int>(x->cells[n][ci][0]);
      int cb = static_cast<int>(x->cells[n][ci][1]);
      for (int i = 0; i <= n && n >= 1; ++i) {
        int ra = a.d(n, i, ca);
        if (i == 0) ra = f.act[t.tau[n][cb]][n - 1][ra];
        x->face[n][i][ci] = x->index_of(n - 1, {ra, b.d(n, i, cb)});
      }
      for (int j = 0; j <= n && n < x->cap; ++j)
        x->degen[n][j][ci] = x->index_of(n + 1, {a.s(n, j, ca), b.s(n, j, cb)});
    }
  x->finish();
  x->validate("InvalidTwisting");
  return x;
}

} // namespace cleave
