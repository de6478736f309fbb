#pragma once

#include <utility>
#include <vector>

#include "encoderlab/code_spec.hpp"

namespace encoderlab {

enum class SectorTag { Sink, Equator, Bulk };
enum class QubitRole { A1, A2, B, Bp, C, Cp, D };

/// Geometry of the L×L periodic lattice with qubits on edges.
///
/// Horizontal edge E_h(x,y) points from vertex (x,y) to (x+1,y), vertical
/// edge E_v(x,y) from (x,y) to (x,y+1), coordinates mod L. Plaquette P(x,y)
/// has corners (x,y)..(x+1,y+1). Site ids put the L² plaquettes first,
/// then the L² vertices; qubit ids put the L² horizontal edges first.
///
/// Excitation flow: plaquette excitations drift down (-y) to the equator
/// row y=0, then left (-x) into the sink plaquette P(0,0); vertex
/// excitations drift right (+x) to the column x=0 (wrapping), then up (+y)
/// into the sink vertex V(0,0). Both unencoded qubits E_h(0,0) and E_v(0,0)
/// border the sink plaquette and touch the sink vertex, and no correction
/// operator acts on them.
struct ToricLayout {
    int L = 0;

    int eh(int x, int y) const { return idx(x, y); }
    int ev(int x, int y) const { return L * L + idx(x, y); }
    int plaq(int x, int y) const { return idx(x, y); }
    int vert(int x, int y) const { return L * L + idx(x, y); }
    int num_qubits() const { return 2 * L * L; }
    int num_sites() const { return 2 * L * L; }
    int plaq_sink() const { return plaq(0, 0); }
    int vert_sink() const { return vert(0, 0); }

    std::vector<int> successor;    // per site id, -1 at the two sinks
    std::vector<int> f;            // per site id
    std::vector<SectorTag> sector; // per site id
    std::vector<QubitRole> role;   // per qubit id

    int a1() const { return 0; }          // E_h(0,0)
    int a2() const { return L * L; }      // E_v(0,0)

    int idx(int x, int y) const {
        int xm = ((x % L) + L) % L;
        int ym = ((y % L) + L) % L;
        return ym * L + xm;
    }
};

/// Toric code on 2L² qubits with single-qubit drift corrections.
/// include_sinks=false drops the two sink dephasing channels from the
/// active set (the sites stay in the list, so Q and |S| counting per site
/// are unchanged).
std::pair<CodeSpec, ToricLayout> build_toric(int L, bool include_sinks = true);

/// Geometry only, O(L²); the syndrome chain at large L needs no Pauli data.
ToricLayout build_toric_layout(int L);

}  // namespace encoderlab
