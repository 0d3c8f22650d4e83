#pragma once

namespace fbns {

// Uniform grid on [0, t_final] with n_steps steps (n_steps + 1 points).
struct TimeGrid {
  double t_final = 1.0;
  int n_steps = 1;

  double dt() const { return t_final / n_steps; }
  double time(int n) const { return t_final * n / n_steps; }
  int points() const { return n_steps + 1; }

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace fbns
