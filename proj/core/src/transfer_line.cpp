#include "dcs/transfer_line.hpp"

#include <sstream>

#include "dcs/error.hpp"

namespace dcs {

std::string generate_transfer_line(int machines, int workload, int capacity) {
    if (machines < 1 || workload < 1 || capacity < 1)
        throw ElaborationError("transfer line parameters must be >= 1");
    std::ostringstream os;
    os << "const M = " << machines << "\n";
    os << "const W = " << workload << "\n";
    os << "const C = " << capacity << "\n";
    os << "\n";
    os << "Machine(Id=0) = Working[0],\n";
    os << "  Working[w:0..W] =\n";
    os << "    (when (w < W) get[Id]   -> Working[w+1] |\n";
    os << "     when (w > 0) put[Id+1] -> Working[w-1] ).\n";
    os << "\n";
    os << "TU = Idle,\n";
    os << "  Idle    = (get[M] -> Testing ),\n";
    os << "  Testing = (ret[1] -> reject -> Idle |\n";
    os << "             accept -> Idle)\n";
    os << "            +{ret[0..M]}.\n";
    os << "\n";
    os << "Buffer(Id=0) = At[0],\n";
    os << "  At[c:0..C] = (\n";
    os << "    when (c > 0) get[Id] -> At[c-1] |\n";
    os << "    when (c = 0) get[Id] -> ERROR   |\n";
    os << "    when (c < C) put[Id] -> At[c+1] |\n";
    os << "    when (c = C) put[Id] -> ERROR   |\n";
    os << "    when (c < C) ret[Id] -> At[c+1] |\n";
    os << "    when (c = C) ret[Id] -> ERROR   ).\n";
    os << "\n";
    os << "||Plant = (forall [m:0..M-1] (\n";
    os << "    Machine(m) || Buffer(m+1)) || TU).\n";
    os << "\n";
    os << "controllable { get[0..M] }\n";
    os << "reach { accept, reject }\n";
    os << "avoid { }\n";
    os << "target Plant\n";
    return os.str();
}

} // namespace dcs
