#include "pinch/rational.hpp"

namespace pinch {

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussianRational::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out = rational_str(re_);
    if (im_ != 0) {
        mpq_class a = abs(im_);
        std::string mag = (a == 1) ? "i" : rational_str(a) + "*i";
        if (re_ == 0) {
            out = (im_ < 0 ? "-" : "") + mag;
        } else {
            out += (im_ < 0 ? "-" : "+") + mag;
        }
    }
    return out;
}

}  // namespace pinch
