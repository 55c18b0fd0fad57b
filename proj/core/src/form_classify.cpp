#include "wittkit/form_classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace wittkit::formcore {

namespace {

using exactalg::rows_split_summand;

// ---------------------------------------------------------------------
// small-integer view of a form over a prime field with cyclic Q: the hot
// enumeration loops run on longs; composite rings and general parameters
// fall back to the exact generic path
// ---------------------------------------------------------------------

struct SmallView {
  long mod = 0;  // field characteristic
  long qord = 1; // |Q| (cyclic)
  long tau1 = 0; // coordinate of tau(1)
  int n = 0;
  std::vector<long> b;  // n*n gram
  std::vector<long> qv; // per-basis q coordinate

  static std::optional<SmallView> make(const UnimodularForm &f) {
    const FormParameter &p = f.param();
    if (!p.ring().is_field() || p.flavor() == Flavor::General)
      return std::nullopt;
    if (p.q_gens() != 1 || !p.q_is_finite())
      return std::nullopt;
    SmallView v;
    v.mod = p.ring().modulus().get_si();
    v.qord = std::max<long>(1, p.q_order().get_si());
    v.tau1 = p.tau(Int(1)).coords[0].get_si() % v.qord;
    v.n = f.rank();
    v.b.resize(size_t(v.n) * v.n);
    v.qv.resize(v.n);
    for (int i = 0; i < v.n; ++i) {
      for (int j = 0; j < v.n; ++j)
        v.b[size_t(i) * v.n + j] = f.gram().at(i, j).get_si();
      v.qv[i] = f.qvals()[i].coords[0].get_si() % v.qord;
    }
    return v;
  }

  long eval_b(const long *x, const long *y) const {
    long acc = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0)
        continue;
      long row = 0;
      for (int j = 0; j < n; ++j)
        row += b[size_t(i) * n + j] * y[j];
      acc += x[i] * (row % mod);
    }
    return ((acc % mod) + mod) % mod;
  }

  // q(sum x_i e_i) = sum x_i^2 q_i + sum_{i<j} tau(x_i x_j B_ij)
  long eval_q(const long *x) const {
    long acc = 0;
    for (int i = 0; i < n; ++i)
      acc += (x[i] * x[i] % qord) * qv[i];
    long mix = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        mix += x[i] * x[j] % mod * b[size_t(i) * n + j] % mod;
    acc += ((mix % mod) + mod) % mod * tau1;
    return ((acc % qord) + qord) % qord;
  }
};

std::vector<std::vector<long>> small_vectors(long mod, int n,
                                             bool skip_zero = false) {
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= mod;
    if (total > 4000000)
      throw cap_error("vector enumeration too large");
  }
  std::vector<std::vector<long>> out;
  out.reserve(total);
  std::vector<long> v(n, 0);
  for (long code = 0; code < total; ++code) {
    long t = code;
    for (int i = 0; i < n; ++i) {
      v[i] = t % mod;
      t /= mod;
    }
    if (!(skip_zero && code == 0))
      out.push_back(v);
  }
  return out;
}

long inv_mod(long a, long p) {
  long r = 1, base = ((a % p) + p) % p, e = p - 2;
  while (e) {
    if (e & 1)
      r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

// incremental Gaussian independence over F_p: rows are echelonized copies
struct Echelon {
  long mod;
  int n;
  std::vector<std::vector<long>> rows; // reduced rows
  std::vector<int> pivots;

  Echelon(long mod_, int n_) : mod(mod_), n(n_) {}

  // returns true and records when v is independent of the current span
  bool push(const std::vector<long> &v) {
    std::vector<long> r = v;
    for (size_t k = 0; k < rows.size(); ++k) {
      long c = r[pivots[k]] % mod;
      if (c == 0)
        continue;
      for (int j = 0; j < n; ++j)
        r[j] = ((r[j] - c * rows[k][j]) % mod + mod) % mod;
    }
    int piv = -1;
    for (int j = 0; j < n; ++j)
      if (r[j] % mod != 0) {
        piv = j;
        break;
      }
    if (piv < 0)
      return false;
    long inv = inv_mod(r[piv], mod);
    for (int j = 0; j < n; ++j)
      r[j] = r[j] * inv % mod;
    rows.push_back(std::move(r));
    pivots.push_back(piv);
    return true;
  }

  void pop() {
    rows.pop_back();
    pivots.pop_back();
  }
};

Matrix cols_to_matrix(const RingSpec &ring,
                      const std::vector<std::vector<long>> &cols, int n) {
  Matrix m(ring, n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i)
      m.set(i, static_cast<int>(j), Int(cols[j][i]));
  return m;
}

// generic (exact) helpers for the fallback path
std::vector<std::vector<Int>> all_vectors_exact(const RingSpec &ring, int n) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> v(n, Int(0));
  long m = ring.modulus().get_si();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m;
    if (total > 4000000)
      throw cap_error("vector enumeration too large");
  }
  for (long code = 0; code < total; ++code) {
    long t = code;
    for (int i = 0; i < n; ++i) {
      v[i] = Int(t % m);
      t /= m;
    }
    out.push_back(v);
  }
  return out;
}

Matrix tuple_matrix(const RingSpec &ring,
                    const std::vector<std::vector<Int>> &cols) {
  int n = cols.empty() ? 0 : static_cast<int>(cols[0].size());
  Matrix m(ring, n, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i)
      m.set(i, static_cast<int>(j), cols[j][i]);
  return m;
}

bool extendable_to_basis_exact(const RingSpec &ring,
                               const std::vector<std::vector<Int>> &cols) {
  return rows_split_summand(tuple_matrix(ring, cols).transpose());
}

// exhaustive isometry search, small-int path
std::optional<Matrix> search_isometry_small(const UnimodularForm &f,
                                            const UnimodularForm &g,
                                            const SmallView &sf,
                                            const SmallView &sg) {
  int n = sf.n;
  const RingSpec &ring = f.param().ring();
  if (n == 0)
    return Matrix(ring, 0, 0);
  auto vectors = small_vectors(sf.mod, n);
  std::vector<long> qv(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i)
    qv[i] = sg.eval_q(vectors[i].data());

  std::vector<std::vector<long>> chosen;
  Echelon ech(sf.mod, n);
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n)
      return true;
    long want_q = sf.qv[k];
    long want_bkk = sf.b[size_t(k) * n + k];
    for (size_t idx = 0; idx < vectors.size(); ++idx) {
      const auto &v = vectors[idx];
      if (qv[idx] != want_q)
        continue;
      if (sg.eval_b(v.data(), v.data()) != want_bkk)
        continue;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        if (sg.eval_b(chosen[i].data(), v.data()) != sf.b[size_t(i) * n + k])
          ok = false;
      if (!ok)
        continue;
      if (!ech.push(v))
        continue;
      chosen.push_back(v);
      if (rec(k + 1))
        return true;
      chosen.pop_back();
      ech.pop();
    }
    return false;
  };
  if (!rec(0))
    return std::nullopt;
  return cols_to_matrix(ring, chosen, n);
}

// exhaustive isometry search, exact fallback (composite rings, general
// parameters)
std::optional<Matrix> search_isometry_exact(const UnimodularForm &f,
                                            const UnimodularForm &g) {
  const RingSpec &ring = f.param().ring();
  int n = f.rank();
  if (n == 0)
    return Matrix(ring, 0, 0);
  auto vectors = all_vectors_exact(ring, n);
  std::vector<QElem> qv;
  qv.reserve(vectors.size());
  for (const auto &v : vectors)
    qv.push_back(g.eval_q(v));

  std::vector<std::vector<Int>> chosen;
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n)
      return true;
    for (size_t idx = 0; idx < vectors.size(); ++idx) {
      const auto &v = vectors[idx];
      if (qv[idx] != f.qvals()[k])
        continue;
      if (g.eval_b(v, v) != f.gram().at(k, k))
        continue;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i)
        if (g.eval_b(chosen[i], v) != f.gram().at(i, k))
          ok = false;
      if (!ok)
        continue;
      chosen.push_back(v);
      if (extendable_to_basis_exact(ring, chosen) && rec(k + 1))
        return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(0))
    return std::nullopt;
  return tuple_matrix(ring, chosen);
}

std::optional<Matrix> search_isometry_finite(const UnimodularForm &f,
                                             const UnimodularForm &g) {
  auto sf = SmallView::make(f), sg = SmallView::make(g);
  if (sf && sg)
    return search_isometry_small(f, g, *sf, *sg);
  return search_isometry_exact(f, g);
}

// definite forms over Z: enumerate vectors of prescribed norm exactly
void definite_vectors_of_norm(const Matrix &gram, const Int &target, int sign,
                              std::vector<std::vector<Int>> &out) {
  int n = gram.rows();
  Matrix g = sign > 0 ? gram : gram.neg();
  Int t = sign > 0 ? target : -target;
  if (t < 0)
    return;
  Int dg = exactalg::det(g);
  std::vector<long> bound(n);
  for (int i = 0; i < n; ++i) {
    Matrix minor(gram.ring(), n - 1, n - 1);
    for (int a = 0, ai = 0; a < n; ++a) {
      if (a == i)
        continue;
      for (int b = 0, bi = 0; b < n; ++b) {
        if (b == i)
          continue;
        minor.set(ai, bi, g.at(a, b));
        ++bi;
      }
      ++ai;
    }
    Int adj = n == 1 ? Int(1) : exactalg::det(minor);
    Int num = t * adj;
    Int q = num / dg + 1;
    Int r;
    mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
    bound[i] = r.get_si() + 1;
  }
  std::vector<Int> x(n, Int(0));
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Int norm = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          norm += x[a] * g.at(a, b) * x[b];
      if (norm == t)
        out.push_back(x);
      return;
    }
    for (long v = -bound[i]; v <= bound[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

std::optional<Matrix> search_isometry_definite(const UnimodularForm &f,
                                               const UnimodularForm &g,
                                               int sign) {
  int n = f.rank();
  std::vector<std::vector<std::vector<Int>>> cands(n);
  for (int k = 0; k < n; ++k)
    definite_vectors_of_norm(g.gram(), f.gram().at(k, k), sign, cands[k]);
  std::vector<std::vector<Int>> chosen;
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n)
      return true;
    for (const auto &v : cands[k]) {
      bool ok = g.eval_q(v) == f.qvals()[k];
      for (int i = 0; i < k && ok; ++i)
        if (g.eval_b(chosen[i], v) != f.gram().at(i, k))
          ok = false;
      if (!ok)
        continue;
      chosen.push_back(v);
      if (rec(k + 1)) {
        Matrix u = tuple_matrix(f.param().ring(), chosen);
        if (exactalg::is_unimodular(u))
          return true;
      }
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(0))
    return std::nullopt;
  return tuple_matrix(f.param().ring(), chosen);
}

} // namespace

std::string iso_fingerprint(const UnimodularForm &f) {
  const RingSpec &ring = f.param().ring();
  if (!ring.is_finite())
    throw validation_error("iso_fingerprint: finite rings only");
  std::ostringstream os;
  os << "r" << f.rank();
  Int d = f.rank() == 0 ? Int(1) : exactalg::det(f.gram());
  Int dmin = d;
  for (const Int &u : ring.units())
    dmin = std::min(dmin, ring.mul(ring.mul(u, u), d));
  os << ";d" << dmin.get_str() << ";";
  auto sv = SmallView::make(f);
  if (sv) {
    std::map<std::pair<long, long>, long> hist;
    for (const auto &v : small_vectors(sv->mod, sv->n))
      hist[{sv->eval_q(v.data()), sv->eval_b(v.data(), v.data())}]++;
    for (const auto &[k, c] : hist)
      os << k.first << "|" << k.second << ":" << c << ",";
    return os.str();
  }
  std::map<std::string, long> hist;
  for (const auto &v : all_vectors_exact(ring, f.rank()))
    hist[f.eval_q(v).str() + "|" + f.eval_b(v, v).get_str()]++;
  for (const auto &[k, c] : hist)
    os << k << ":" << c << ",";
  return os.str();
}

int signature(const Matrix &b) {
  if (!b.ring().is_integers())
    throw validation_error("signature: requires ring Z");
  int n = b.rows();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = Rat(b.at(i, j));
  std::vector<bool> done(n, false);
  int sig = 0;
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n && piv < 0; ++i)
      if (!done[i] && m[i][i] != 0)
        piv = i;
    if (piv < 0) {
      int a = -1, c = -1;
      for (int i = 0; i < n && a < 0; ++i)
        for (int j = i + 1; j < n && a < 0; ++j)
          if (!done[i] && !done[j] && m[i][j] != 0) {
            a = i;
            c = j;
          }
      if (a < 0)
        break;
      for (int k = 0; k < n; ++k)
        m[a][k] += m[c][k];
      for (int k = 0; k < n; ++k)
        m[k][a] += m[k][c];
      --step;
      continue;
    }
    Rat p = m[piv][piv];
    sig += p > 0 ? 1 : -1;
    done[piv] = true;
    for (int i = 0; i < n; ++i) {
      if (done[i] || m[i][piv] == 0)
        continue;
      Rat c = m[i][piv] / p;
      for (int k = 0; k < n; ++k)
        m[i][k] -= c * m[piv][k];
      for (int k = 0; k < n; ++k)
        m[k][i] -= c * m[k][piv];
    }
  }
  return sig;
}

int signature(const UnimodularForm &f) {
  if (!f.param().ring().is_integers() || f.param().epsilon() != 1)
    throw validation_error("signature: requires ring Z and eps = +1");
  return signature(f.gram());
}

bool is_even_parity(const UnimodularForm &f) {
  for (int i = 0; i < f.rank(); ++i)
    if (mpz_odd_p(f.gram().at(i, i).get_mpz_t()))
      return false;
  return true;
}

IsoResult is_isometric(const UnimodularForm &f, const UnimodularForm &g,
                       int rank_cap) {
  if (f.param() != g.param())
    throw validation_error("is_isometric: parameter mismatch");
  if (f.rank() != g.rank())
    return {IsoVerdict::No, std::nullopt, "rank"};
  const RingSpec &ring = f.param().ring();

  if (ring.is_finite()) {
    if (f.rank() > rank_cap)
      throw cap_error("is_isometric: rank exceeds cap " +
                      std::to_string(rank_cap));
    if (iso_fingerprint(f) != iso_fingerprint(g))
      return {IsoVerdict::No, std::nullopt, "representation numbers"};
    auto u = search_isometry_finite(f, g);
    if (!u)
      return {IsoVerdict::No, std::nullopt, "exhaustive orbit search"};
    Isometry iso{f, g, *u};
    iso.validate();
    return {IsoVerdict::Yes, iso, ""};
  }

  if (f.param().epsilon() != 1 || (f.param().flavor() != Flavor::Symmetric &&
                                   f.param().flavor() != Flavor::Quadratic))
    return {IsoVerdict::Unknown, std::nullopt,
            "no decision procedure for this parameter over Z"};
  if (f.rank() == 0)
    return {IsoVerdict::Yes, Isometry{f, g, Matrix(ring, 0, 0)}, ""};
  int sf = signature(f), sg = signature(g);
  if (sf != sg)
    return {IsoVerdict::No, std::nullopt, "signature"};
  if (is_even_parity(f) != is_even_parity(g))
    return {IsoVerdict::No, std::nullopt, "parity"};
  bool definite = std::abs(sf) == f.rank();
  if (definite) {
    if (f.rank() > 4)
      return {IsoVerdict::Unknown, std::nullopt,
              "definite forms beyond rank 4"};
    auto u = search_isometry_definite(f, g, sf > 0 ? 1 : -1);
    if (!u)
      return {IsoVerdict::No, std::nullopt, "short vector matching"};
    Isometry iso{f, g, *u};
    iso.validate();
    return {IsoVerdict::Yes, iso, ""};
  }
  // indefinite: classified by (rank, signature, parity)
  return {IsoVerdict::Yes, std::nullopt, ""};
}

UnimodularForm canonical_form(const UnimodularForm &f) {
  const RingSpec &ring = f.param().ring();
  if (!ring.is_finite())
    throw validation_error("canonical_form: finite rings only");
  int n = f.rank();
  if (n == 0)
    return f;

  auto sv = SmallView::make(f);
  if (sv) {
    auto vectors = small_vectors(sv->mod, n);
    std::vector<long> qv(vectors.size());
    for (size_t i = 0; i < vectors.size(); ++i)
      qv[i] = sv->eval_q(vectors[i].data());

    struct Partial {
      std::vector<size_t> tuple;
      Echelon ech;
    };
    std::vector<Partial> partials = {{{}, Echelon(sv->mod, n)}};
    for (int k = 0; k < n; ++k) {
      bool have_best = false;
      std::vector<long> best;
      std::vector<Partial> achievers;
      for (auto &p : partials) {
        for (size_t idx = 0; idx < vectors.size(); ++idx) {
          std::vector<long> row;
          row.reserve(k + 2);
          for (size_t i : p.tuple)
            row.push_back(
                sv->eval_b(vectors[i].data(), vectors[idx].data()));
          row.push_back(sv->eval_b(vectors[idx].data(), vectors[idx].data()));
          row.push_back(qv[idx]);
          if (have_best && row > best)
            continue;
          if (!p.ech.push(vectors[idx]))
            continue;
          if (!have_best || row < best) {
            have_best = true;
            best = row;
            achievers.clear();
          }
          Partial np{p.tuple, p.ech};
          np.tuple.push_back(idx);
          achievers.push_back(std::move(np));
          p.ech.pop();
          if (achievers.size() > 200000)
            throw cap_error("canonical_form: achiever explosion");
        }
      }
      if (!have_best)
        throw std::logic_error("canonical_form: no extendable vector");
      partials = std::move(achievers);
    }
    std::vector<std::vector<long>> cols;
    for (size_t i : partials.front().tuple)
      cols.push_back(vectors[i]);
    return f.change_basis(cols_to_matrix(ring, cols, n));
  }

  // exact fallback
  auto vectors = all_vectors_exact(ring, n);
  std::vector<QElem> qv;
  qv.reserve(vectors.size());
  for (const auto &v : vectors)
    qv.push_back(f.eval_q(v));
  using Row = std::vector<Int>;
  std::vector<std::vector<size_t>> partials = {{}};
  for (int k = 0; k < n; ++k) {
    bool have_best = false;
    Row best;
    std::vector<std::vector<size_t>> achievers;
    for (const auto &p : partials) {
      for (size_t idx = 0; idx < vectors.size(); ++idx) {
        Row row;
        for (size_t i : p)
          row.push_back(f.eval_b(vectors[i], vectors[idx]));
        row.push_back(f.eval_b(vectors[idx], vectors[idx]));
        for (const Int &c : qv[idx].coords)
          row.push_back(c);
        if (have_best && row > best)
          continue;
        std::vector<std::vector<Int>> cols;
        for (size_t i : p)
          cols.push_back(vectors[i]);
        cols.push_back(vectors[idx]);
        if (!extendable_to_basis_exact(ring, cols))
          continue;
        auto tup = p;
        tup.push_back(idx);
        if (!have_best || row < best) {
          have_best = true;
          best = row;
          achievers.clear();
        }
        achievers.push_back(std::move(tup));
        if (achievers.size() > 200000)
          throw cap_error("canonical_form: achiever explosion");
      }
    }
    if (!have_best)
      throw std::logic_error("canonical_form: no extendable vector");
    partials = std::move(achievers);
  }
  std::vector<std::vector<Int>> cols;
  for (size_t i : partials.front())
    cols.push_back(vectors[i]);
  return f.change_basis(tuple_matrix(ring, cols));
}

std::vector<UnimodularForm> enumerate_classes(const FormParameter &param,
                                              int rank_cap) {
  const RingSpec &ring = param.ring();
  if (!ring.is_finite())
    throw validation_error("enumerate_classes: finite rings only");
  auto q_elems = param.q_elements();

  auto dedup_add = [&](std::vector<UnimodularForm> &classes,
                       std::vector<std::string> &fps,
                       const UnimodularForm &cand) {
    std::string fp = iso_fingerprint(cand);
    for (size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].rank() != cand.rank() || fps[i] != fp)
        continue;
      if (search_isometry_finite(cand, classes[i]))
        return;
    }
    classes.push_back(cand);
    fps.push_back(fp);
  };

  std::vector<UnimodularForm> rank1, rank2;
  {
    std::vector<std::string> fp1, fp2;
    for (const Int &a : ring.units())
      for (const QElem &q0 : q_elems)
        if (param.rho(q0) == a)
          dedup_add(rank1, fp1, UnimodularForm::diagonal(param, {a}, {q0}));
    for (const Int &b11 : ring.elements())
      for (const Int &b22 : ring.elements())
        for (const Int &b12 : ring.elements()) {
          Int d = ring.sub(ring.mul(b11, b22),
                           ring.mul(Int(param.epsilon()), ring.mul(b12, b12)));
          if (!ring.is_unit(d))
            continue;
          Matrix b(ring, 2, 2);
          b.set(0, 0, b11);
          b.set(1, 1, b22);
          b.set(0, 1, b12);
          b.set(1, 0, ring.mul(Int(param.epsilon()), b12));
          for (const QElem &q1 : q_elems) {
            if (param.rho(q1) != b11)
              continue;
            for (const QElem &q2 : q_elems) {
              if (param.rho(q2) != b22)
                continue;
              dedup_add(rank2, fp2, UnimodularForm(param, b, {q1, q2}));
            }
          }
        }
  }

  // breadth-first by rank; every unimodular form over Z/n has an orthogonal
  // summand of rank <= 2, so rank-1/rank-2 extensions reach every class
  std::vector<std::vector<UnimodularForm>> by_rank(rank_cap + 1);
  by_rank[0] = {UnimodularForm::zero(param)};
  for (int r = 1; r <= rank_cap; ++r) {
    std::vector<std::string> fps;
    std::vector<UnimodularForm> level;
    if (r >= 1)
      for (const auto &c : by_rank[r - 1])
        for (const auto &a : rank1)
          dedup_add(level, fps, c.orthogonal_sum(a));
    if (r >= 2)
      for (const auto &c : by_rank[r - 2])
        for (const auto &a : rank2)
          dedup_add(level, fps, c.orthogonal_sum(a));
    by_rank[r] = std::move(level);
  }

  std::vector<UnimodularForm> out;
  for (int r = 0; r <= rank_cap; ++r) {
    std::vector<UnimodularForm> level;
    for (const auto &c : by_rank[r])
      level.push_back(canonical_form(c));
    std::sort(level.begin(), level.end(),
              [](const UnimodularForm &a, const UnimodularForm &b) {
                return a.data_less(b);
              });
    for (auto &c : level)
      out.push_back(std::move(c));
  }
  return out;
}

int class_index(const std::vector<UnimodularForm> &classes,
                const UnimodularForm &f, int rank_cap) {
  (void)rank_cap;
  std::string fp = iso_fingerprint(f);
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].rank() != f.rank())
      continue;
    if (iso_fingerprint(classes[i]) != fp)
      continue;
    if (search_isometry_finite(f, classes[i]))
      return static_cast<int>(i);
  }
  throw std::logic_error("class_index: class not found (cap too small?)");
}

Int arf(const UnimodularForm &f) {
  const RingSpec &ring = f.param().ring();
  if (!ring.is_finite() || ring.modulus() != 2 ||
      f.param().flavor() != Flavor::Quadratic)
    throw validation_error("arf: requires quadratic flavor over F2");
  if (f.rank() % 2 != 0)
    throw validation_error("arf: rank must be even");
  int n = f.rank();
  std::vector<std::vector<Int>> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> e(n, Int(0));
    e[i] = 1;
    basis.push_back(e);
  }
  auto addv = [&](const std::vector<Int> &a, const std::vector<Int> &b) {
    std::vector<Int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      c[i] = ring.add(a[i], b[i]);
    return c;
  };
  Int total = 0;
  while (!basis.empty()) {
    auto v = basis.front();
    int wi = -1;
    for (size_t i = 1; i < basis.size(); ++i)
      if (f.eval_b(v, basis[i]) == 1) {
        wi = static_cast<int>(i);
        break;
      }
    if (wi < 0)
      throw std::logic_error("arf: degenerate symplectic form");
    auto w = basis[wi];
    total += f.eval_q(v).coords[0] * f.eval_q(w).coords[0];
    std::vector<std::vector<Int>> rest;
    for (size_t i = 1; i < basis.size(); ++i) {
      if (static_cast<int>(i) == wi)
        continue;
      auto u = basis[i];
      auto u2 = u;
      if (f.eval_b(u, w) == 1)
        u2 = addv(u2, v);
      if (f.eval_b(u, v) == 1)
        u2 = addv(u2, w);
      rest.push_back(u2);
    }
    basis = std::move(rest);
  }
  Int r;
  mpz_mod_ui(r.get_mpz_t(), total.get_mpz_t(), 2);
  return r;
}

} // namespace wittkit::formcore
