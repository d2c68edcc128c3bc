#pragma once

#include <optional>
#include <string>

#include "bispec/mobius.hpp"
#include "bispec/optimize.hpp"

namespace bispec {

// Dynamics taxonomy for the pair (phi, psi) after coordinate normalization:
// elliptic factors first, rational before irrational, parabolic before
// hyperbolic. "EE" = both factors elliptic rotations.
enum class CaseKind {
    EE_RatRat,            // both rational rotations (periodic joint dynamics)
    EE_RatIrr,            // rational x irrational
    EE_IrrIrrGeneric,     // both irrational, no usable relation declared
    EE_IrrIrrIndependent, // both irrational, declared independent
    EE_IrrIrrPositive,    // both irrational, declared a1^p = a2^q
    EE_IrrIrrMixed,       // both irrational, declared a1^p a2^q = 1
    ERat_P,
    EIrr_P,
    P_P,
    ERat_H,
    EIrr_H,
    P_H,
    H_H,
};

const char* case_kind_name(CaseKind k);

struct CaseTag {
    CaseKind kind;
    MapClass class1, class2;
    std::optional<Relation> relation;  // both-irrational cases only
    InvertibilityStatus invertibility = InvertibilityStatus::Inconclusive;
    bool monomial_hypothesis = false;  // reduced weight nonzero at the origin
    bool coordinates_swapped = false;  // normalization transposed the factors
    bool crossed = false;              // input was in swap form; tag describes its square
    std::optional<long long> m;        // both rational: lcm of the orders
    long long p = 0;                   // rational factor order (when present)
};

std::string case_tag_text(const CaseTag& tag);

}  // namespace bispec
