#pragma once

#include <iosfwd>
#include <string>

#include "symorbit/loopspace.hpp"

namespace symorbit {

/// A loop together with the masses it was computed for.
struct LoopRecord {
  DiscreteLoop loop;
  MassVector masses;
};

/// Columnar text: a header line "# N=<N> T=<T> n=<n> masses=<m_1> ... <m_n>"
/// followed by one row per lattice time "t x_1 y_1 ... x_n y_n" at full precision.
void write_loop(std::ostream& os, const DiscreteLoop& loop, const MassVector& masses);
LoopRecord read_loop(std::istream& is);

void save_loop(const std::string& path, const DiscreteLoop& loop, const MassVector& masses);
LoopRecord load_loop(const std::string& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace symorbit
