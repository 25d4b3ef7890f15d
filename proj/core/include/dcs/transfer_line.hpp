#pragma once

#include <string>

namespace dcs {

// Emits the transfer-line model: M machines feeding buffers of capacity
// C, each machine holding up to W pieces, a test unit accepting or
// rejecting finished pieces (rejects return to buffer 1), buffers that
// move to ERROR on underflow/overflow. The directive block makes every
// `get` controllable and {accept, reject} the reach objective.
std::string generate_transfer_line(int machines, int workload, int capacity);

} // namespace dcs
