#pragma once

// Minimal self-contained SVG line charts.

#include <string>
#include <vector>

namespace qent::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool markers = false;
};

struct HorizontalLine {
    std::string name;
    double y = 0.0;
    std::string color = "#d62728";
};

class LineChart {
public:
    LineChart(std::string title, std::string x_label, std::string y_label);

    LineChart& log_x(bool on = true);
    LineChart& log_y(bool on = true);
    LineChart& add(Series s);
    LineChart& add(HorizontalLine h);

    // Every series becomes one <polyline class="series" data-name=... data-count=...>,
    // every horizontal line a <line class="hline" data-name=... data-y=...>.
    std::string render(int width = 720, int height = 480) const;

private:
    std::string title_, x_label_, y_label_;
    bool log_x_ = false;
    bool log_y_ = false;
    std::vector<Series> series_;
    std::vector<HorizontalLine> hlines_;
};

}  // namespace qent::svg
