# Double Bragg Diffraction Toolkit
# Main application package
