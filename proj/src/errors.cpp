#include "ellk3/errors.hpp"

namespace ellk3 {

const char* err_name(Err e) {
    switch (e) {
        case Err::ZeroThetaComponent: return "ZeroThetaComponent";
        case Err::NonSquareScale: return "NonSquareScale";
        case Err::KThreeOnly: return "KThreeOnly";
        case Err::ZeroRank: return "ZeroRank";
        case Err::KernelWithoutTable: return "KernelWithoutTable";
        case Err::NotWeakFamily: return "NotWeakFamily";
        case Err::UnknownLimit: return "UnknownLimit";
        case Err::NotAmple: return "NotAmple";
        case Err::DegenerateTarget: return "DegenerateTarget";
        case Err::HypothesisViolated: return "HypothesisViolated";
        case Err::ParallelSlopes: return "ParallelSlopes";
        case Err::WindowEmpty: return "WindowEmpty";
        case Err::UnsupportedName: return "UnsupportedName";
        case Err::InvalidSpec: return "InvalidSpec";
    }
    return "UnknownError";
}

}  // namespace ellk3
