#pragma once

#include <memory>
#include <vector>

#include "rais/mdp.hpp"

namespace rais {

// One stored transition, viewed through its owning trajectory. The partial
// log-weight runs through the action at `step` and is frozen at insertion
// time; consumers may instead recompute it under the current proposal.
struct ReplayItem {
  const Trajectory* traj = nullptr;
  int step = 0;
  double insertion_partial_logw = 0.0;
  int member = 0;
};

// Fixed-capacity FIFO of transition records. Each stored trajectory
// contributes one record per step; the oldest records are evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void add_trajectory(const std::shared_ptr<const Trajectory>& traj, int member);

  long long size() const { return static_cast<long long>(count_); }
  int capacity() const { return capacity_; }

  // Uniform draw over the stored records.
  ReplayItem sample(Rng& rng) const;

 private:
  struct Stored {
    std::shared_ptr<const Trajectory> traj;
    int step;
    int member;
    double partial_logw;
  };

  int capacity_;
  std::size_t head_ = 0;  // oldest record
  std::size_t count_ = 0;
  std::vector<Stored> ring_;
};

}  // namespace rais
