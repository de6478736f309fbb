#include "encoderlab/psi.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace encoderlab {

PsiSpec psi_preset(const std::string& name) {
    const double r = 1.0 / std::numbers::sqrt2;
    PsiSpec p;
    p.name = name;
    if (name == "00") {
        p.amps = {1, 0, 0, 0};
        p.stabilizer = p.product = true;
    } else if (name == "0+") {
        p.amps = {r, r, 0, 0};
        p.stabilizer = p.product = true;
    } else if (name == "++") {
        p.amps = {0.5, 0.5, 0.5, 0.5};
        p.stabilizer = p.product = true;
    } else if (name == "bell") {
        p.amps = {r, 0, 0, r};
        p.stabilizer = true;
    } else if (name == "magic") {
        p.amps = {r, 0, r * std::polar(1.0, std::numbers::pi / 4), 0};
    } else {
        throw std::invalid_argument("unknown psi preset: " + name);
    }
    return p;
}

PsiSpec psi_from_amplitudes(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        vals.push_back(std::stod(tok));
    }
    PsiSpec p;
    p.name = "custom";
    if (vals.size() == 4) {
        for (double v : vals) p.amps.emplace_back(v, 0.0);
    } else if (vals.size() == 8) {
        for (size_t i = 0; i < 4; ++i) p.amps.emplace_back(vals[2 * i], vals[2 * i + 1]);
    } else {
        throw std::invalid_argument("psi amplitudes need 4 reals or 8 re,im values");
    }
    double norm2 = 0;
    for (auto a : p.amps) norm2 += std::norm(a);
    if (norm2 < 1e-12) throw std::invalid_argument("psi amplitudes are all zero");
    for (auto& a : p.amps) a /= std::sqrt(norm2);
    return p;
}

}  // namespace encoderlab
