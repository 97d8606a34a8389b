#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "toeplitz/sequence.hpp"

namespace toeplitz {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-disk sequence format: one header line of space-separated tokens
//   toepseq v1 alphabet=<csv ints> length=<n> [key=value ...]
// followed by exactly `length` raw payload bytes, each an index into the
// alphabet list. Keys and values must not contain spaces.
struct SequenceFile {
    std::vector<int> alphabet;
    Sequence payload;                        // symbol values, not indices
    std::map<std::string, std::string> metadata;

    static SequenceFile wrap(const Sequence& x);  // alphabet = sorted distinct symbols
};

void write_sequence_file(const std::string& path, const SequenceFile& file);
SequenceFile read_sequence_file(const std::string& path);

}  // namespace toeplitz
