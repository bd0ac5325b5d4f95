#include "ptob/geometry.hpp"

namespace ptob {

template struct WheelGeometryT<double>;
template CapBounds<double> max_cap_dimensions(double, double, int);
template ConstraintReport validate_wheel_geometry(const WheelGeometryT<double>&, bool);
template double support_plate_spacing(const WheelGeometryT<double>&, double);

}  // namespace ptob
