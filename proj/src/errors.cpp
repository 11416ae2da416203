#include "dpc/errors.hpp"

namespace dpc {

const char* fault_name(Fault f) {
    switch (f) {
        case Fault::NegativeWeight: return "NegativeWeight";
        case Fault::Disconnected: return "Disconnected";
        case Fault::HasCycle: return "HasCycle";
        case Fault::NegativeResultWeight: return "NegativeResultWeight";
        case Fault::NotAPath: return "NotAPath";
        case Fault::NoSuchEdge: return "NoSuchEdge";
        case Fault::NotAdjacentSupernodes: return "NotAdjacentSupernodes";
        case Fault::NotContiguous: return "NotContiguous";
        case Fault::NotAMatching: return "NotAMatching";
        case Fault::WrongState: return "WrongState";
        case Fault::NotATreeEdge: return "NotATreeEdge";
        case Fault::EmptyTargets: return "EmptyTargets";
        case Fault::ModeMismatch: return "ModeMismatch";
        case Fault::BadRequest: return "BadRequest";
    }
    return "UnknownFault";
}

}  // namespace dpc
