#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "tow/common.hpp"

namespace tow {

// Round outcome tags: who moved.
enum class Coin : std::uint8_t { PlayerI = 0, PlayerII = 1, Random = 2 };

// Game transcript (x_0, (c_1, x_1), ..., (c_k, x_k)) in lattice coordinates,
// with moves attributed to the three partitions (Player I / Player II /
// random) and their running vector sums. All arithmetic is on integers, so
// the position-sum identity
//   x_k = x_0 + sum_I1 + sum_I2 + sum_I3
// holds exactly at every step.
struct GameHistory {
  std::vector<Lattice> positions;
  std::vector<Coin> coins;
  Lattice sum1 = lat_zero();  // Player I moves
  Lattice sum2 = lat_zero();  // Player II moves
  Lattice sum3 = lat_zero();  // random moves
  long wins1 = 0;
  long wins2 = 0;

  explicit GameHistory(const Lattice& x0) { positions.push_back(x0); }

  std::size_t rounds() const { return coins.size(); }
  const Lattice& current() const { return positions.back(); }
  const Lattice& start() const { return positions.front(); }

  Lattice move_of_round(std::size_t j) const {  // j in [1, rounds()]
    return lat_sub(positions[j], positions[j - 1]);
  }

  void append(Coin c, const Lattice& next) {
    const Lattice mv = lat_sub(next, positions.back());
    positions.push_back(next);
    coins.push_back(c);
    switch (c) {
      case Coin::PlayerI:
        sum1 = lat_add(sum1, mv);
        ++wins1;
        break;
      case Coin::PlayerII:
        sum2 = lat_add(sum2, mv);
        ++wins2;
        break;
      case Coin::Random:
        sum3 = lat_add(sum3, mv);
        break;
    }
    assert(position_sum_holds());
  }

  bool position_sum_holds() const {
    const Lattice rhs = lat_add(lat_add(start(), sum1), lat_add(sum2, sum3));
    return rhs == current();
  }
};

}  // namespace tow
