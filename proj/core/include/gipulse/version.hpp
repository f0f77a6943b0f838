#ifndef GIPULSE_VERSION_HPP
#define GIPULSE_VERSION_HPP

namespace gipulse {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSpecVersion = 1;

} // namespace gipulse

#endif
