#ifndef LEXBORROW_IO_HPP
#define LEXBORROW_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lexborrow {

/// Shortest round-trip decimal form; infinities serialize as "inf"/"-inf".
std::string fmt_double(double value);

double parse_double(const std::string& s);

/// Writes content to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

bool file_exists(const std::string& path);

/// Requires the file to exist; names it in the error otherwise.
void require_file(const std::string& path, const std::string& what);

/// FNV-1a over the file bytes, as a hex string. Used for manifests.
std::string fnv1a_hex(const std::string& bytes);
std::string hash_file(const std::string& path);

struct TsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

TsvTable read_tsv(const std::string& path, bool has_header);
std::string format_tsv(const TsvTable& table);

std::vector<std::string> read_lines(const std::string& path);

} // namespace lexborrow

#endif
