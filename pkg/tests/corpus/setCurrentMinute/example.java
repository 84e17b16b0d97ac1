public class TimeDialog {
    void restore(TimePicker picker, int savedMinute) {
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            picker.setCurrentMinute(savedMinute);
        } else {
            picker.setMinute(savedMinute);
        }
    }
}
