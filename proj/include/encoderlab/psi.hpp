#pragma once

#include <complex>
#include <string>
#include <vector>

namespace encoderlab {

/// Two-qubit input state for the unencoded pair; amplitude index is
/// 2*a + b with a the first logical qubit.
struct PsiSpec {
    std::string name;
    std::vector<std::complex<double>> amps;  // 4 entries, normalized
    bool stabilizer = false;                 // tableau engines accept it
    bool product = false;                    // syndrome sampler accepts it
};

/// Presets: 00, 0+, ++, bell, magic. Throws on unknown names.
PsiSpec psi_preset(const std::string& name);

/// Parse "a,b,c,d" (4 reals) or "re,im,re,im,..." (8 reals) into a
/// normalized PsiSpec named "custom".
PsiSpec psi_from_amplitudes(const std::string& csv);

}  // namespace encoderlab
