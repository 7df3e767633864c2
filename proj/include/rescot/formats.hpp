#pragma once

#include <iosfwd>
#include <string>

#include "rescot/resilience.hpp"
#include "rescot/runtime.hpp"

namespace rescot {

/* CSV with header `state_id,value`; values are 0,1,... or omega / omega+1 */
void save_resilience_csv(std::ostream& os, const ResilienceMap& map);
void save_resilience_csv_file(const std::string& path, const ResilienceMap& map);
ResilienceMap load_resilience_csv_file(const std::string& path);

/* CSV with header `value,count`, ascending by value */
void save_histogram_csv(std::ostream& os, const ResilienceMap& map);
void save_histogram_csv_file(const std::string& path, const ResilienceMap& map);

/* Versioned structured-text controller document: sub-controller tables, the
 * class selector and the switching rule tag. Round-trip exact. */
void save_controller(std::ostream& os, const ResilientController& rc);
void save_controller_file(const std::string& path, const ResilientController& rc);
ResilientController load_controller(std::istream& is);
ResilientController load_controller_file(const std::string& path);

/* CSV with columns step, x0.., u0.., w0.., cell_id, spike, verdict */
void save_trace_csv(std::ostream& os, const Trace& trace, std::size_t state_dim,
                    std::size_t input_dim);
void save_trace_csv_file(const std::string& path, const Trace& trace, std::size_t state_dim,
                         std::size_t input_dim);

}  // namespace rescot
