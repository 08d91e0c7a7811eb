#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace oplab {

// Deterministic CSV assembly: %.17g floats, '.' decimal point, no locale input.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::string str() const;

    static std::string num(double v);
    static std::string num(std::size_t v);

  private:
    std::size_t width_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace oplab
