import android.widget.TimePicker;

public class NoonCheck {
    void check(TimePicker timePicker) {
        if (timePicker.getCurrentHour() > 11)
            itsNoon();
    }
}
