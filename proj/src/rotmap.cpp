#include "zz/rotmap.hpp"

#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "zz/spectrum.hpp"

namespace zz {

std::optional<RotmapViolation> validate_rotmap(const RotMapGraph& g) {
  const int n = g.size(), d = g.degree();
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < d; ++i) {
      const RotEntry e = g.rot(v, i);
      if (e.vertex < 0 || e.vertex >= n || e.label < 0 || e.label >= d)
        return RotmapViolation{v, i, "entry out of range or missing"};
      const RotEntry back = g.rot(e.vertex, e.label);
      if (back.vertex != v || back.label != i)
        return RotmapViolation{v, i, "not self-inverse"};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> label_counts(const RotMapGraph& g) {
  const int n = g.size(), d = g.degree();
  std::vector<std::vector<int>> counts(n, std::vector<int>(n, 0));
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) counts[v][g.rot(v, i).vertex]++;
  return counts;
}

std::vector<std::vector<double>> normalized_adjacency(const RotMapGraph& g) {
  if (validate_rotmap(g)) throw std::invalid_argument("invalid rotation map");
  const int n = g.size(), d = g.degree();
  auto counts = label_counts(g);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    int row = 0;
    for (int v = 0; v < n; ++v) {
      row += counts[u][v];
      m[u][v] = static_cast<double>(counts[u][v]) / d;
    }
    assert(row == d);  // exact row sums in integer label counts
  }
  return m;
}

Spectrum spectrum(const RotMapGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("spectrum: n = 0");
  Spectrum s;
  s.eigenvalues = jacobi_eigenvalues(normalized_adjacency(g));
  if (s.eigenvalues.size() >= 2) {
    const double l2 = s.eigenvalues[1];
    const double ln = s.eigenvalues.back();
    s.lambda = std::max(std::fabs(l2), std::fabs(ln));
  }
  return s;
}

std::pair<bool, bool> connectivity_flags(const RotMapGraph& g) {
  if (g.size() == 0) throw std::invalid_argument("connectivity_flags: n = 0");
  const int n = g.size(), d = g.degree();
  std::vector<int> colour(n, -1);
  colour[0] = 0;
  std::queue<int> q;
  q.push(0);
  int seen = 1;
  bool bipartite = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int i = 0; i < d; ++i) {
      int w = g.rot(v, i).vertex;
      if (w == v) {
        bipartite = false;  // self-loop is an odd closed walk
        continue;
      }
      if (colour[w] == -1) {
        colour[w] = colour[v] ^ 1;
        ++seen;
        q.push(w);
      } else if (colour[w] == colour[v]) {
        bipartite = false;
      }
    }
  }
  const bool connected = seen == n;
  if (!connected) bipartite = false;

  if (n >= 2) {
    const Spectrum s = spectrum(g);
    const double tol = 1e-7;
    const bool spec_connected = s.eigenvalues[1] < 1.0 - tol;
    assert(connected == spec_connected);
    if (connected) {
      const bool spec_bipartite = s.eigenvalues.back() < -1.0 + tol;
      assert(bipartite == spec_bipartite);
    }
  }
  return {connected, bipartite};
}

RotMapGraph square(const RotMapGraph& g) {
  if (validate_rotmap(g)) throw std::invalid_argument("square: invalid input");
  const int n = g.size(), d = g.degree();
  RotMapGraph sq(n, d * d);
  for (int u = 0; u < n; ++u) {
    for (int k1 = 0; k1 < d; ++k1) {
      const RotEntry a = g.rot(u, k1);  // (v, l1)
      for (int k2 = 0; k2 < d; ++k2) {
        const RotEntry b = g.rot(a.vertex, k2);  // (w, l2)
        sq.set_rot(u, pair_id(k1, k2, d), b.vertex, pair_id(b.label, a.label, d));
      }
    }
  }
  return sq;
}

RotMapGraph zigzag(const RotMapGraph& g1, const RotMapGraph& g2) {
  if (validate_rotmap(g1) || validate_rotmap(g2))
    throw std::invalid_argument("zigzag: invalid input");
  if (g2.size() != g1.degree())
    throw std::invalid_argument("zigzag: |V(G2)| must equal deg(G1)");
  const int n1 = g1.size(), d1 = g1.degree(), d2 = g2.degree();
  RotMapGraph z(n1 * d1, d2 * d2);
  for (int v = 0; v < n1; ++v) {
    for (int k = 0; k < d1; ++k) {
      for (int i = 0; i < d2; ++i) {
        const RotEntry s1 = g2.rot(k, i);         // (k', i')
        const RotEntry s2 = g1.rot(v, s1.vertex); // (w, l')
        for (int j = 0; j < d2; ++j) {
          const RotEntry s3 = g2.rot(s2.label, j);  // (l, j')
          z.set_rot(pair_id(v, k, d1), pair_id(i, j, d2),
                    pair_id(s2.vertex, s3.vertex, d1), pair_id(s3.label, s1.label, d2));
        }
      }
    }
  }
  return z;
}

double expansion_ratio_bruteforce(const RotMapGraph& g) {
  const int n = g.size(), d = g.degree();
  if (n < 1 || n > 20)
    throw std::invalid_argument("expansion_ratio_bruteforce: n out of range");
  if (n == 1) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  const uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  for (uint32_t mask = 1; mask <= full; ++mask) {
    const int sz = __builtin_popcount(mask);
    if (sz == 0 || 2 * sz > n) continue;
    int crossing = 0;
    for (int v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      for (int i = 0; i < d; ++i) {
        int w = g.rot(v, i).vertex;
        if (!(mask >> w & 1)) ++crossing;
      }
    }
    best = std::min(best, static_cast<double>(crossing) / sz);
  }
  return best;
}

CheegerReport cheeger_check(const RotMapGraph& g) {
  if (g.size() > 20) throw std::invalid_argument("cheeger_check: n > 20");
  CheegerReport r;
  r.bound = g.degree() * (1.0 - spectrum(g).lambda) / 2.0;
  if (g.size() == 1) {
    r.h = std::numeric_limits<double>::infinity();
    r.satisfied = true;  // no S with |S| <= n/2
    return r;
  }
  r.h = expansion_ratio_bruteforce(g);
  r.satisfied = r.h >= r.bound - 1e-9;
  return r;
}

std::vector<RotMapGraph> iterated_family(const RotMapGraph& H, int m_max,
                                         int spectral_cap) {
  const int D = H.degree();
  long long want = 1;
  for (int k = 0; k < 4; ++k) want *= D;
  if (H.size() != want)
    throw std::invalid_argument("iterated_family: H must have D^4 vertices");
  if (m_max < 1) throw std::invalid_argument("iterated_family: m_max < 1");

  const double lambda_H =
      H.size() <= spectral_cap ? spectrum(H).lambda : 2.0;  // 2.0 = unknown
  const bool certify = lambda_H <= 0.25;

  std::vector<RotMapGraph> out;
  out.push_back(square(H));
  for (int m = 2; m <= m_max; ++m) out.push_back(zigzag(square(out.back()), H));

  long long size = H.size();
  for (int m = 1; m <= m_max; ++m) {
    const RotMapGraph& gm = out[m - 1];
    if (gm.size() != size || gm.degree() != D * D)
      throw std::runtime_error("iterated_family: size/degree check failed");
    if (certify && gm.size() <= spectral_cap) {
      if (spectrum(gm).lambda > 0.5 + 1e-9)
        throw std::runtime_error("iterated_family: lambda(G_m) > 1/2");
    }
    size *= want;
  }
  return out;
}

double zigzag_bound_paper(double l1, double l2) {
  const double a = (1.0 - l2 * l2);
  return 0.5 * a * l1 + 0.5 * std::sqrt(a * a * l1 + 4.0 * l2 * l2);
}

double zigzag_bound_standard(double l1, double l2) {
  const double a = (1.0 - l2 * l2);
  return 0.5 * a * l1 + 0.5 * std::sqrt(a * a * l1 * l1 + 4.0 * l2 * l2);
}

RotMapGraph cycle_rotmap(int n) {
  if (n < 3) throw std::invalid_argument("cycle_rotmap: n < 3");
  RotMapGraph g(n, 2);
  for (int v = 0; v < n; ++v) {
    g.set_rot(v, 0, (v + 1) % n, 1);
    g.set_rot(v, 1, (v + n - 1) % n, 0);
  }
  return g;
}

RotMapGraph complete_rotmap(int n) {
  if (n < 2) throw std::invalid_argument("complete_rotmap: n < 2");
  RotMapGraph g(n, n - 1);
  // label i at v points to the i-th other vertex; the back-label is v's
  // position in the target's neighbour list.
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < n - 1; ++i) {
      const int w = i < v ? i : i + 1;
      const int back = v < w ? v : v - 1;
      g.set_rot(v, i, w, back);
    }
  }
  return g;
}

RotMapGraph single_self_loop() {
  RotMapGraph g(1, 1);
  g.set_rot(0, 0, 0, 0);
  return g;
}

RotMapGraph read_rotmap(std::istream& in) {
  std::string tag;
  int n = -1, d = -1;
  if (!(in >> tag >> n >> d) || tag != "rotmap" || n < 0 || d < 1)
    throw std::runtime_error("rotmap load: bad header");
  RotMapGraph g(n, d);
  std::vector<char> seen(static_cast<size_t>(n) * d, 0);
  for (long long k = 0; k < static_cast<long long>(n) * d; ++k) {
    int v, i, w, j;
    if (!(in >> v >> i >> w >> j))
      throw std::runtime_error("rotmap load: truncated entry list");
    if (v < 0 || v >= n || i < 0 || i >= d || w < 0 || w >= n || j < 0 || j >= d)
      throw std::runtime_error("rotmap load: entry out of range");
    if (seen[static_cast<size_t>(v) * d + i])
      throw std::runtime_error("rotmap load: duplicate (v,i) key");
    seen[static_cast<size_t>(v) * d + i] = 1;
    g.set_rot(v, i, w, j);
  }
  return g;
}

void write_rotmap(std::ostream& out, const RotMapGraph& g) {
  out << "rotmap " << g.size() << ' ' << g.degree() << '\n';
  for (int v = 0; v < g.size(); ++v)
    for (int i = 0; i < g.degree(); ++i) {
      const RotEntry e = g.rot(v, i);
      out << v << ' ' << i << ' ' << e.vertex << ' ' << e.label << '\n';
    }
}

}  // namespace zz
