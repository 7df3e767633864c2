#include "rescot/transition_map.hpp"

#include "rescot/errors.hpp"

namespace rescot {

SuccessorMap SuccessorMap::from_rows(StateId num_states, ActionId num_actions,
                                     std::vector<std::vector<StateId>> rows) {
  const std::size_t expected = static_cast<std::size_t>(num_states) * num_actions;
  if (rows.size() != expected)
    throw InternalError("SuccessorMap: row count does not match num_states * num_actions");

  SuccessorMap m;
  m.num_states_ = num_states;
  m.num_actions_ = num_actions;
  m.offsets_.resize(expected + 1, 0);

  std::uint64_t total = 0;
  for (std::size_t p = 0; p < expected; ++p) {
    auto& row = rows[p];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (StateId t : row)
      if (t >= num_states) throw InternalError("SuccessorMap: successor id out of range");
    total += row.size();
    m.offsets_[p + 1] = total;
  }
  m.targets_.reserve(total);
  for (auto& row : rows) m.targets_.insert(m.targets_.end(), row.begin(), row.end());
  return m;
}

}  // namespace rescot
