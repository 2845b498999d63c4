#pragma once

// Published multisets for s = 001010111: the full readout, the readout with
// C_3 removed, and with C_3 and C_7 removed.

namespace listings {

inline constexpr const char* kFull =
    "0,0,1,0,1,0,1,1,1, 0^2,0^11^1,0^11^1,0^11^1,0^11^1,"
    "0^11^1,1^2,1^2,0^21^1,0^21^1,0^11^2,0^21^1,0^11^2,0^11^2,"
    "1^3,0^31^1,0^21^2,0^21^2,0^21^2,0^11^3,0^11^3,0^31^2,"
    "0^31^2,0^21^3,0^21^3,0^11^4,0^41^2,0^31^3,0^21^4,0^21^4,"
    "0^41^3,0^31^4,0^21^5,0^41^4,0^31^5,0^41^5";

inline constexpr const char* kWithoutC3 =
    "0,0,1,0,1,0,1,1,1, 0^2,0^11^1,0^11^1,0^11^1,0^11^1,"
    "0^11^1,1^2,1^2,0^31^1,0^21^2,0^21^2,0^21^2,0^11^3,0^11^3,"
    "0^31^2,0^31^2,0^21^3,0^21^3,0^11^4,0^41^2,0^31^3,0^21^4,"
    "0^21^4,0^41^3,0^31^4,0^21^5,0^41^4,0^31^5,0^41^5";

inline constexpr const char* kWithoutC3C7 =
    "0,0,1,0,1,0,1,1,1, 0^2,0^11^1,0^11^1,0^11^1,0^11^1,"
    "0^11^1,1^2,1^2,0^31^1,0^21^2,0^21^2,0^21^2,0^11^3,0^11^3,"
    "0^31^2,0^31^2,0^21^3,0^21^3,0^11^4,0^41^2,0^31^3,0^21^4,"
    "0^21^4,0^41^4,0^31^5,0^41^5";

inline constexpr const char* kC3 = "0^21, 0^21, 01^2, 0^21, 01^2, 01^2, 1^3";
inline constexpr const char* kC7 = "0^41^3,0^31^4,0^21^5";
inline constexpr const char* kC7Inserted = "0^41^3,0^31^4,0^21^5,0^11^6";

}  // namespace listings
