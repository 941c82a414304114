#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rps/graph.hpp"

namespace rps {

enum class CertificateMethod { Exact, Greedy };

/// A vertex set checked to be pairwise non-adjacent in its graph.
class IndependentSetCertificate {
 public:
  /// Throws std::logic_error if two listed vertices are adjacent or a
  /// vertex repeats.
  IndependentSetCertificate(const GraphView& g, std::vector<Vertex> vertices, CertificateMethod method);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  CertificateMethod method() const { return method_; }
  /// True when size() equals the independence number.
  bool exact() const { return method_ == CertificateMethod::Exact; }

 private:
  std::vector<Vertex> vertices_;
  CertificateMethod method_;
};

inline constexpr std::uint32_t kExactMisCap = 120;

class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Maximum independent set by branch and bound on 128-bit vertex sets:
/// vertices of degree <= 1 are taken greedily, branching is on a vertex of
/// maximum remaining degree, and subtrees are cut with the clique-cover bound
/// |P| - |M| for a greedy matching M. Throws SizeLimitError for n > 120.
IndependentSetCertificate exact_independence_number(const GraphView& g);

/// Best of `repeats` minimum-degree greedy runs, ties broken by a random
/// vertex order. Always at least ceil(n / (d + 1)) for average degree d.
IndependentSetCertificate greedy_independent_set(const GraphView& g, std::uint32_t repeats,
                                                 std::uint64_t seed);

/// Exact for n <= 120, otherwise greedy with ceil(log2 n) repeats.
IndependentSetCertificate certify(const GraphView& g, std::uint64_t seed);

/// ceil(n / (d + 1)) with d the average degree, computed exactly.
std::uint64_t turan_floor(const GraphView& g);

}  // namespace rps
