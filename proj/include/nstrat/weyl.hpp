#pragma once

// Finite Weyl group: lengths, reduced words, parabolic subgroups and
// minimal coset representatives.

#include "root_datum.hpp"

#include <deque>
#include <set>

namespace nstrat {

// Sign of the image of a root under w without canonicalizing.
inline bool maps_to_positive(const GroupDatum& G, const WeylElt& w, int root) {
  const Root& r = G.roots[root];
  return G.index_in_slot(w.perm[r.a]) < G.index_in_slot(w.perm[r.b]);
}

inline int length_finite(const GroupDatum& G, const WeylElt& w) {
  int l = 0;
  for (int p : G.positive_roots)
    if (!maps_to_positive(G, w, p)) ++l;
  return l;
}

inline bool is_right_descent(const GroupDatum& G, const WeylElt& w, int k) {
  return !maps_to_positive(G, w, G.simple[k]);
}

inline bool is_left_descent(const GroupDatum& G, const WeylElt& w, int k) {
  return !maps_to_positive(G, inverse(w), G.simple[k]);
}

inline bool is_identity(const WeylElt& w) {
  for (std::size_t a = 0; a < w.perm.size(); ++a)
    if (w.perm[a] != static_cast<int>(a)) return false;
  return true;
}

inline WeylElt from_word(const GroupDatum& G, const std::vector<int>& word) {
  WeylElt w = weyl_identity(G);
  for (int k : word) {
    if (k < 0 || k >= G.num_simple()) throw std::invalid_argument("simple reflection index out of range");
    w = w * simple_reflection(G, k);
  }
  return w;
}

inline std::vector<int> reduced_word(const GroupDatum& G, WeylElt w) {
  std::vector<int> word;
  for (bool found = true; found;) {
    found = false;
    for (int k = 0; k < G.num_simple(); ++k)
      if (is_right_descent(G, w, k)) {
        word.push_back(k);
        w = w * simple_reflection(G, k);
        found = true;
        break;
      }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

inline const std::vector<WeylElt>& weyl_elements(const GroupDatum& G) {
  std::call_once(G.weyl_cache->once, [&G] {
    std::set<WeylElt> seen;
    std::deque<WeylElt> queue{weyl_identity(G)};
    seen.insert(queue.front());
    std::vector<WeylElt>& out = G.weyl_cache->elements;
    while (!queue.empty()) {
      WeylElt w = queue.front();
      queue.pop_front();
      out.push_back(w);
      for (int k = 0; k < G.num_simple(); ++k) {
        WeylElt v = w * simple_reflection(G, k);
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
  });
  return G.weyl_cache->elements;
}

inline WeylElt longest_element(const GroupDatum& G) {
  WeylElt w = weyl_identity(G);
  for (bool found = true; found;) {
    found = false;
    for (int k = 0; k < G.num_simple(); ++k)
      if (!is_right_descent(G, w, k)) {
        w = w * simple_reflection(G, k);
        found = true;
      }
  }
  return w;
}

// Frobenius on W: conjugation by the Galois generator.
inline WeylElt sigma(const GroupDatum& G, const WeylElt& w) {
  return WeylElt{compose(G.gamma, compose(w.perm, G.gamma_inv))};
}

inline WeylElt sigma_inverse(const GroupDatum& G, const WeylElt& w) {
  return WeylElt{compose(G.gamma_inv, compose(w.perm, G.gamma))};
}

inline Mask sigma_mask(const GroupDatum& G, Mask J) {
  Mask out = 0;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k)) out |= Mask(1) << G.galois_simple[k];
  return out;
}

inline Mask sigma_inverse_mask(const GroupDatum& G, Mask J) {
  Mask out = 0;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, G.galois_simple[k])) out |= Mask(1) << k;
  return out;
}

// Position of root among the simple roots, or -1.
inline int simple_position(const GroupDatum& G, int root) { return G.simple_pos[root]; }

// {k in K : u s_k u^{-1} is a simple reflection in J}, i.e. K intersected with u^{-1} J u.
inline Mask conjugate_mask_into(const GroupDatum& G, const WeylElt& u, Mask K, Mask J) {
  Mask out = 0;
  for (int k = 0; k < G.num_simple(); ++k) {
    if (!mask_has(K, k)) continue;
    int img = act_root(G, u, G.simple[k]);
    int p = simple_position(G, img);
    if (p < 0) p = simple_position(G, G.root_negative[img]);
    if (p >= 0 && mask_has(J, p)) out |= Mask(1) << k;
  }
  return out;
}

// Image of a set of simple reflections under conjugation s -> u s u^{-1}; every
// image must again be simple.
inline Mask conjugate_mask(const GroupDatum& G, const WeylElt& u, Mask J) {
  Mask out = 0;
  for (int k = 0; k < G.num_simple(); ++k) {
    if (!mask_has(J, k)) continue;
    int img = act_root(G, u, G.simple[k]);
    int p = simple_position(G, img);
    if (p < 0) p = simple_position(G, G.root_negative[img]);
    if (p < 0) throw std::logic_error("conjugated simple reflection is not simple");
    out |= Mask(1) << p;
  }
  return out;
}

struct CosetDecomposition {
  WeylElt left;      // element of W_J (identity for right cosets)
  WeylElt minimal;   // the minimal representative u
  WeylElt right;     // element of W_K (identity for left cosets)
  Mask K_prime = 0;  // K intersected with u^{-1} J u, for double cosets
};

enum class CosetSide { Left, Right, Double };

// w = left * minimal for left cosets W_J w.
inline std::pair<WeylElt, WeylElt> reduce_left(const GroupDatum& G, const WeylElt& w, Mask J) {
  WeylElt a = weyl_identity(G), y = w;
  for (bool found = true; found;) {
    found = false;
    for (int k = 0; k < G.num_simple(); ++k)
      if (mask_has(J, k) && is_left_descent(G, y, k)) {
        WeylElt s = simple_reflection(G, k);
        y = s * y;
        a = a * s;
        found = true;
      }
  }
  return {a, y};
}

// w = minimal * right for right cosets w W_K.
inline std::pair<WeylElt, WeylElt> reduce_right(const GroupDatum& G, const WeylElt& w, Mask K) {
  WeylElt b = weyl_identity(G), y = w;
  for (bool found = true; found;) {
    found = false;
    for (int k = 0; k < G.num_simple(); ++k)
      if (mask_has(K, k) && is_right_descent(G, y, k)) {
        WeylElt s = simple_reflection(G, k);
        y = y * s;
        b = s * b;
        found = true;
      }
  }
  return {y, b};
}

inline bool in_parabolic(const GroupDatum& G, const WeylElt& w, Mask J) {
  return is_identity(reduce_left(G, w, J).second);
}

// Minimal element of W_J w W_K.
inline WeylElt double_coset_min(const GroupDatum& G, const WeylElt& w, Mask J, Mask K) {
  WeylElt y = w;
  for (;;) {
    WeylElt z = reduce_right(G, reduce_left(G, y, J).second, K).first;
    if (z == y) return y;
    y = z;
  }
}

inline CosetDecomposition min_coset_rep(const GroupDatum& G, const WeylElt& w, Mask J, CosetSide side, Mask K = 0) {
  CosetDecomposition d;
  switch (side) {
    case CosetSide::Left: {
      auto [a, y] = reduce_left(G, w, J);
      d = {a, y, weyl_identity(G), 0};
      break;
    }
    case CosetSide::Right: {
      auto [y, b] = reduce_right(G, w, J);
      d = {weyl_identity(G), y, b, 0};
      break;
    }
    case CosetSide::Double: {
      WeylElt u = double_coset_min(G, w, J, K);
      auto [a, y] = reduce_left(G, w, J);
      WeylElt c = inverse(u) * y;
      if (!in_parabolic(G, c, K)) throw std::logic_error("double coset decomposition failed");
      d = {a, u, c, conjugate_mask_into(G, u, K, J)};
      break;
    }
  }
  if (length_finite(G, w) != length_finite(G, d.left) + length_finite(G, d.minimal) + length_finite(G, d.right))
    throw std::logic_error("coset decomposition is not length additive");
  return d;
}

template <class T>
std::vector<std::vector<T>> weyl_orbit(const GroupDatum& G, const std::vector<T>& lam) {
  std::set<std::vector<T>> seen{lam};
  std::deque<std::vector<T>> queue{lam};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (int k = 0; k < G.num_simple(); ++k) {
      auto u = act(simple_reflection(G, k), v);
      if (seen.insert(u).second) queue.push_back(u);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace nstrat
