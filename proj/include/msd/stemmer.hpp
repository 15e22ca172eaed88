#ifndef MSD_STEMMER_HPP
#define MSD_STEMMER_HPP

#include <string>
#include <string_view>

namespace msd {

/// Porter suffix-stripping stemmer over lowercase ASCII words. Bytes outside
/// [a-z] are treated as consonants, so non-English tokens pass through mostly
/// unchanged. Inflected forms of one word map to one stem ("stemming" and
/// "stemmed" both give "stem").
std::string porter_stem(std::string_view word);

} // namespace msd

#endif
