#pragma once

// Block-diagonal involutions on U^3 + E8(-1)^2, used as test data.

#include <string>
#include <utility>
#include <vector>

#include "k3real/involution.hpp"
#include "k3real/lattice.hpp"

namespace k3real {

enum class BlockAction {
  plus,              // identity
  minus,             // -identity
  neg_reflect,       // x -> -R_rho(x), rho the block's reference root
  pair_swap_negate,  // two copies, (x, y) -> (-y, -x)
};

inline BlockAction parse_block_action(const std::string& s) {
  if (s == "plus") return BlockAction::plus;
  if (s == "minus") return BlockAction::minus;
  if (s == "neg_reflect") return BlockAction::neg_reflect;
  if (s == "pair_swap_negate") return BlockAction::pair_swap_negate;
  throw DomainError("unknown block action '" + s + "'");
}

inline std::string to_string(BlockAction a) {
  switch (a) {
    case BlockAction::plus: return "plus";
    case BlockAction::minus: return "minus";
    case BlockAction::neg_reflect: return "neg_reflect";
    default: return "pair_swap_negate";
  }
}

struct ModelBlock {
  std::string lattice;  // a make_standard name
  BlockAction action = BlockAction::plus;
};

// A vector supported on one block; pair blocks take both copies' coordinates.
struct Placement {
  std::size_t block = 0;
  IntVector local;
};

struct ModelSpec {
  std::string name;
  std::vector<ModelBlock> blocks;
  std::vector<Placement> h;
  std::vector<std::pair<std::vector<Placement>, std::vector<Placement>>> sigma;
};

namespace detail {

// Reference root of a summand: e - f on U, the first basis root otherwise.
inline IntVector block_root(const std::string& lattice, const IntLattice& l) {
  IntVector rho(l.rank());
  if (lattice == "U") {
    rho[0] = 1;
    rho[1] = -1;
  } else {
    rho[0] = 1;
  }
  if (l.square(rho) != -2) throw DomainError("block '" + lattice + "' has no reference root");
  return rho;
}

}  // namespace detail

inline MarkedInvolution build_model_involution(const ModelSpec& spec) {
  std::vector<IntLattice> pieces;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;
  IntLattice lattice(IntMatrix(0, 0));
  for (const auto& b : spec.blocks) {
    IntLattice piece = make_standard(b.lattice);
    offsets.push_back(total);
    const std::size_t copies = b.action == BlockAction::pair_swap_negate ? 2 : 1;
    for (std::size_t k = 0; k < copies; ++k) lattice = direct_sum(lattice, piece);
    total += copies * piece.rank();
    pieces.push_back(std::move(piece));
  }
  if (!is_even(lattice) || !is_unimodular(lattice) || !(signature(lattice) == Signature{3, 19}))
    throw DomainError("blocks do not tile the K3 lattice");

  IntMatrix phi(total, total);
  for (std::size_t k = 0; k < spec.blocks.size(); ++k) {
    const std::size_t o = offsets[k], n = pieces[k].rank();
    switch (spec.blocks[k].action) {
      case BlockAction::plus:
        for (std::size_t i = 0; i < n; ++i) phi(o + i, o + i) = 1;
        break;
      case BlockAction::minus:
        for (std::size_t i = 0; i < n; ++i) phi(o + i, o + i) = -1;
        break;
      case BlockAction::neg_reflect: {
        // -x - (x.rho) rho
        const IntVector rho = detail::block_root(spec.blocks[k].lattice, pieces[k]);
        const IntVector g_rho = pieces[k].gram() * rho;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) phi(o + i, o + j) = (i == j ? -1 : 0) - g_rho[j] * rho[i];
        break;
      }
      case BlockAction::pair_swap_negate:
        for (std::size_t i = 0; i < n; ++i) {
          phi(o + n + i, o + i) = -1;
          phi(o + i, o + n + i) = -1;
        }
        break;
    }
  }

  auto place = [&](const std::vector<Placement>& parts) {
    IntVector v(total);
    for (const auto& p : parts) {
      if (p.block >= spec.blocks.size()) throw DomainError("placement refers to a missing block");
      const std::size_t width =
          pieces[p.block].rank() * (spec.blocks[p.block].action == BlockAction::pair_swap_negate ? 2 : 1);
      if (p.local.size() != width) throw DomainError("placement has wrong length for its block");
      for (std::size_t i = 0; i < width; ++i) v[offsets[p.block] + i] += p.local[i];
    }
    return v;
  };

  MarkedInvolution mi{IntLattice(lattice.gram(), "K3"), place(spec.h), {}, LatticeInvolution(std::move(phi))};
  for (const auto& [a, b] : spec.sigma) mi.sigma.emplace_back(place(a), place(b));
  return mi;
}

}  // namespace k3real
