#include "toeplitz/sequence_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace toeplitz {

Sequence parse_block(const std::string& text) {
    Sequence out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ' || c == '\t') continue;
        if (c == '-') {
            if (i + 1 >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))
                throw std::invalid_argument("parse_block: dangling '-'");
            out.push_back(static_cast<std::int8_t>(-(text[++i] - '0')));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            out.push_back(static_cast<std::int8_t>(c - '0'));
        } else {
            throw std::invalid_argument(std::string("parse_block: unexpected character '") + c + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("parse_block: empty block");
    return out;
}

std::string render_block(const Sequence& x) {
    std::string out;
    out.reserve(x.size());
    for (auto v : x) out += v < 0 ? '-' : static_cast<char>('0' + v);
    return out;
}

namespace {

std::int64_t parse_int_token(const std::string& s) {
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw FormatError("sequence file: malformed integer '" + s + "'");
    return v;
}

}  // namespace

SequenceFile SequenceFile::wrap(const Sequence& x) {
    SequenceFile f;
    std::set<int> distinct(x.begin(), x.end());
    f.alphabet.assign(distinct.begin(), distinct.end());
    if (f.alphabet.empty()) f.alphabet.push_back(0);
    f.payload = x;
    return f;
}

void write_sequence_file(const std::string& path, const SequenceFile& file) {
    if (file.alphabet.empty() || file.alphabet.size() > 255)
        throw FormatError("sequence file: alphabet must have 1..255 symbols");
    std::array<int, 256> index;
    index.fill(-1);
    for (std::size_t i = 0; i < file.alphabet.size(); ++i) {
        int v = file.alphabet[i];
        if (v < -128 || v > 127) throw FormatError("sequence file: symbol out of byte range");
        auto u = static_cast<unsigned char>(static_cast<std::int8_t>(v));
        if (index[u] >= 0) throw FormatError("sequence file: duplicate alphabet symbol");
        index[u] = static_cast<int>(i);
    }

    std::ostringstream header;
    header << "toepseq v1 alphabet=";
    for (std::size_t i = 0; i < file.alphabet.size(); ++i) {
        if (i) header << ',';
        header << file.alphabet[i];
    }
    header << " length=" << file.payload.size();
    for (const auto& [k, v] : file.metadata) {
        if (k.empty() || k.find_first_of(" \n=") != std::string::npos ||
            v.find_first_of(" \n") != std::string::npos)
            throw FormatError("sequence file: metadata must not contain spaces");
        header << ' ' << k << '=' << v;
    }
    header << '\n';

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("sequence file: cannot open '" + path + "' for writing");
    out << header.str();
    std::string bytes;
    bytes.reserve(file.payload.size());
    for (auto s : file.payload) {
        int idx = index[static_cast<unsigned char>(s)];
        if (idx < 0) throw FormatError("sequence file: payload symbol not in alphabet");
        bytes += static_cast<char>(idx);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("sequence file: write failed for '" + path + "'");
}

SequenceFile read_sequence_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("sequence file: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw FormatError("sequence file: missing header");

    std::istringstream hs(header);
    std::string magic, version;
    hs >> magic >> version;
    if (magic != "toepseq" || version != "v1")
        throw FormatError("sequence file: bad magic or version in '" + path + "'");

    SequenceFile f;
    std::int64_t length = -1;
    std::string token;
    while (hs >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw FormatError("sequence file: malformed header token '" + token + "'");
        std::string key = token.substr(0, eq);
        std::string val = token.substr(eq + 1);
        if (key == "alphabet") {
            std::size_t pos = 0;
            while (pos < val.size()) {
                auto comma = val.find(',', pos);
                if (comma == std::string::npos) comma = val.size();
                f.alphabet.push_back(static_cast<int>(parse_int_token(val.substr(pos, comma - pos))));
                pos = comma + 1;
            }
        } else if (key == "length") {
            length = parse_int_token(val);
        } else {
            f.metadata[key] = val;
        }
    }
    if (f.alphabet.empty() || length < 0)
        throw FormatError("sequence file: header lacks alphabet or length");
    for (int v : f.alphabet)
        if (v < -128 || v > 127) throw FormatError("sequence file: symbol out of byte range");

    std::string bytes(static_cast<std::size_t>(length), '\0');
    in.read(bytes.data(), static_cast<std::streamsize>(length));
    if (in.gcount() != length) throw FormatError("sequence file: truncated payload");
    if (in.peek() != std::char_traits<char>::eof())
        throw FormatError("sequence file: trailing bytes after payload");

    f.payload.resize(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) {
        auto idx = static_cast<unsigned char>(bytes[static_cast<std::size_t>(i)]);
        if (idx >= f.alphabet.size())
            throw FormatError("sequence file: payload byte outside the alphabet");
        f.payload[static_cast<std::size_t>(i)] =
            static_cast<std::int8_t>(f.alphabet[idx]);
    }
    return f;
}

}  // namespace toeplitz
