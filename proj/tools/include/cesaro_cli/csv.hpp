#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cesaro/cylinder.hpp"
#include "cesaro/group.hpp"

namespace cesaro::cli {

/// Reals are printed with 12 significant digits.
std::string format_real(double v);

/// Element residues joined by ':'.
std::string format_symbol(const GroupSpec& spec, Symbol s);
/// Symbols joined by single spaces.
std::string format_word(const GroupSpec& spec, std::span<const Symbol> w);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
    std::size_t width_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws std::out_of_range.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace cesaro::cli
